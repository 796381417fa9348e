#include "iup/catalog.hpp"
#include "iup/conditioning.hpp"
#include "iup/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace iup;

namespace {

// 2 eps^2 - 8 eps + 3 vanishes at (4 - sqrt 10)/2.
const Polynomial kMaRoot{3, -8, 2};
// eps^2 - 5 eps + 2 vanishes at (5 - sqrt 17)/2.
const Polynomial kP4Root{2, -5, 1};
const Polynomial kCubic{-4, 15, -14, 4};

const ConditionVerdict* first_failure(const VerificationReport& r) {
    for (const auto& c : r.conditions)
        if (!c.pass) return &c;
    return nullptr;
}

}  // namespace

TEST(Verify, ProblemOnePassAndFail) {
    VerificationReport ok = verify(make_ma(rat(1, 3), 2, rat(43, 100)).bundle);
    EXPECT_TRUE(ok.pass);
    EXPECT_EQ(first_failure(ok), nullptr);
    VerificationReport bad = verify(make_ma(rat(1, 3), 2, rat(41, 100)).bundle);
    EXPECT_FALSE(bad.pass);
    const ConditionVerdict* f = first_failure(bad);
    ASSERT_NE(f, nullptr);
    EXPECT_LT(f->margin, ExtRational(0L));
}

TEST(Verify, ReportsEveryConditionKind) {
    VerificationReport r = verify(make_ma(rat(1, 3), 2, rat(43, 100)).bundle);
    std::set<std::string> kinds;
    for (const auto& c : r.conditions) kinds.insert(c.kind);
    for (const char* k : {"optimality", "nonempty", "ambient", "localisation", "dynamics"}) EXPECT_TRUE(kinds.count(k)) << k;
}

TEST(Verify, ParallelMatchesSerial) {
    VerificationBundle b = make_m1_m2({0, 0, 0, 0, 0}, rat(2, 5)).bundle;
    VerificationReport one = verify(b, 1), four = verify(b, 4);
    ASSERT_EQ(one.conditions.size(), four.conditions.size());
    for (size_t i = 0; i < one.conditions.size(); ++i) {
        EXPECT_EQ(one.conditions[i].pass, four.conditions[i].pass);
        EXPECT_EQ(one.conditions[i].margin, four.conditions[i].margin);
    }
}

TEST(Verify, WrongCandidateCountThrows) {
    VerificationBundle b = make_ma(rat(1, 3), 2, rat(43, 100)).bundle;
    b.candidates.push_back(b.candidates.front());
    EXPECT_THROW(verify(b), Error);
}

TEST(Verify, ProblemThreeMirroredAtomsFollowTheirImages) {
    VerificationReport r = verify(make_m1_m2({0, 0, 0, 0, 0}, rat(2, 5)).bundle);
    EXPECT_TRUE(r.pass);
    size_t mirrored = 0;
    for (const auto& c : r.conditions)
        if (c.kind == "dynamics" && c.detail.rfind("mirror of", 0) == 0) ++mirrored;
    EXPECT_EQ(mirrored, 3u);
}

TEST(Verify, MissingTransitionFails) {
    VerificationBundle b = make_ma(rat(1, 3), 2, rat(43, 100)).bundle;
    b.problem.transitions.pop_back();
    VerificationReport r = verify(b);
    EXPECT_FALSE(r.pass);
    bool found = false;
    for (const auto& c : r.conditions)
        if (c.detail == "missing transition") found = true;
    EXPECT_TRUE(found);
}

TEST(Thresholds, ClosedFormPolynomials) {
    EXPECT_TRUE(certifies_root(threshold_ma(2).polynomial, rat(41, 100), rat(42, 100)));
    EXPECT_NEAR(threshold_ma(2).approx, (4 - std::sqrt(10.0)) / 2, 1e-12);
    EXPECT_NEAR(threshold_p4().approx, (5 - std::sqrt(17.0)) / 2, 1e-12);
    EXPECT_LT(evaluate(kCubic, rat(39, 100)), 0);
    EXPECT_GT(evaluate(kCubic, rat(40, 100)), 0);
    EXPECT_TRUE(certifies_root(threshold_eps3().polynomial, rat(39, 100), rat(40, 100)));
    EXPECT_NEAR(threshold_eps3().approx, 0.3972157, 1e-6);
}

TEST(Bisect, ProblemOneBracketsClosedForm) {
    ProblemFamily f = [](const Rational& e) { return make_ma(rat(1, 3), 2, e).bundle; };
    BisectResult r = bisect_threshold(f, rat(2, 5), rat(43, 100), rat(1, 1000000));
    EXPECT_LE(r.hi - r.lo, rat(1, 1000000));
    EXPECT_TRUE(certifies_root(kMaRoot, r.lo, r.hi));
}

TEST(Bisect, RejectsNonBracketingInterval) {
    ProblemFamily f = [](const Rational& e) { return make_ma(rat(1, 3), 2, e).bundle; };
    try {
        bisect_threshold(f, rat(43, 100), rat(45, 100), rat(1, 100));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotBracketing);
    }
    EXPECT_THROW(bisect_threshold(f, rat(45, 100), rat(43, 100), rat(1, 100)), Error);
}

TEST(Bisect, ProblemFourBracketsClosedForm) {
    ProblemFamily f = [](const Rational& e) { return make_p4(e).bundle; };
    BisectResult r = bisect_threshold(f, rat(43, 100), rat(11, 25), rat(1, 1000000));
    EXPECT_TRUE(certifies_root(kP4Root, r.lo, r.hi));
}

TEST(Asiup, CatalogSolutionsPass) {
    CatalogEntry ma = make_ma(rat(1, 3), 2, rat(43, 100));
    EXPECT_TRUE(check_asiup(ma.bundle.candidates, ma.group_generators, involution_sigma(2)).pass);
    CatalogEntry p4 = make_p4(rat(11, 25));
    AsiupResult r = check_asiup(p4.bundle.candidates, p4.group_generators, involution_sigma(3));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.members.size(), r.member_names.size());
}

TEST(Asiup, BoxCentredAtOneHalfFails) {
    AlphaPtr id = make_alpha({{1, 0}, {0, 1}});
    ConstraintMatrix box(id, {{rat(2, 5), rat(3, 5)}, {rat(2, 5), rat(3, 5)}});
    AsiupResult r = check_asiup({box}, {}, involution_sigma(2));
    EXPECT_FALSE(r.pass);
    ASSERT_TRUE(r.witness);
}

TEST(Asiup, SeparationOfFirstCoordinate) {
    ConstraintMatrix m = ma_matrix(rat(1, 3), 2, rat(43, 100));
    Rational hi1 = m.upper(0).value();
    EXPECT_LT(hi1, 1 - hi1);
}
