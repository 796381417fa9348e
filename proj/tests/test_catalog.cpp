#include "iup/catalog.hpp"
#include "iup/error.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace iup;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::ParseError;
}

}  // namespace

TEST(Catalog, MaDegeneratesAtAEqualOne) {
    ConstraintMatrix m = ma_matrix(rat(1, 3), 1, rat(43, 100));
    EXPECT_EQ(m.lower(2), m.upper(2));
    EXPECT_TRUE(is_empty(m));
    CatalogEntry e = make_ma(rat(1, 3), 1, rat(43, 100));
    EXPECT_TRUE(is_empty(e.bundle.candidates[0]));
    EXPECT_FALSE(verify(e.bundle).pass);
}

TEST(Catalog, ParameterRanges) {
    EXPECT_EQ(kind_of([] { make_ma(rat(1, 3), 2, rat(1, 2)); }), ErrorKind::ParameterOutOfRange);
    EXPECT_EQ(kind_of([] { make_ma(rat(1, 3), rat(1, 2), rat(43, 100)); }), ErrorKind::ParameterOutOfRange);
    EXPECT_EQ(kind_of([] { continue_problem2(rat(1, 3), 2, rat(43, 100), rat(1, 2)); }), ErrorKind::ParameterOutOfRange);
}

TEST(Catalog, DeltaSystem) {
    const Rational eps = rat(2, 5);
    EXPECT_EQ(delta_violation({0, 0, 0, 0, 0}, eps), "");
    Delta bad{0, 0, rat(1, 1000), 0, 0};
    EXPECT_NE(delta_violation(bad, eps), "");
    EXPECT_EQ(kind_of([&] { make_m1_m2(bad, eps); }), ErrorKind::DeltaInfeasible);
    EXPECT_NO_THROW(make_m1_m2(bad, eps, DeltaCheck::Skip));
}

TEST(Catalog, SampledDeltasAreFeasibleNestedAndVerify) {
    const Rational eps = rat(2, 5);
    std::mt19937_64 rng(9);
    auto [m1_0, m2_0] = m1_m2_matrices({0, 0, 0, 0, 0}, eps);
    for (int n = 0; n < 20; ++n) {
        Delta d = sample_delta_box(eps, rng);
        ASSERT_EQ(delta_violation(d, eps), "");
        auto [m1, m2] = m1_m2_matrices(d, eps);
        EXPECT_TRUE(includes(m1, m1_0));
        EXPECT_TRUE(includes(m2, m2_0));
        EXPECT_TRUE(verify(make_m1_m2(d, eps).bundle).pass);
    }
}

TEST(Catalog, CollectedDeltaSystemIsNotSufficient) {
    // Satisfies the collected inequalities but violates the atom 000101 condition.
    const Rational eps = rat(2, 5);
    Delta d{rat(1911, 22000), rat(949, 330000), rat(47937, 110000000), rat(87, 110000), rat(10552319, 330000000)};
    EXPECT_NE(delta_violation(d, eps).find("1 - 2p* - delta1"), std::string::npos);
    EXPECT_FALSE(verify(make_m1_m2(d, eps, DeltaCheck::Skip).bundle).pass);
}

TEST(Catalog, SecondPolytopeSumRelations) {
    std::mt19937_64 rng(10);
    for (int n = 0; n < 10; ++n) {
        Delta d = sample_delta_box(rat(2, 5), rng);
        ConstraintMatrix m2 = m1_m2_matrices(d, rat(2, 5)).second;
        auto lo = [&](size_t i) { return m2.lower(i).value(); };
        auto hi = [&](size_t i) { return m2.upper(i).value(); };
        EXPECT_EQ(lo(0) + hi(2), 1);
        EXPECT_EQ(hi(0) + lo(2), 1);
        EXPECT_EQ(lo(1) + hi(1), 1);
        EXPECT_EQ(lo(3) + hi(4), 2);
        EXPECT_EQ(hi(3) + lo(4), 2);
        EXPECT_EQ(lo(5) + hi(5), 3);
    }
}

TEST(Catalog, ProblemThreeThresholds) {
    EXPECT_TRUE(verify(make_m1_m2({0, 0, 0, 0, 0}, rat(2, 5)).bundle).pass);
    EXPECT_FALSE(verify(make_m1_m2({0, 0, 0, 0, 0}, rat(39, 100), DeltaCheck::Skip).bundle).pass);
}

TEST(Catalog, ProblemFourThresholdsAndChain) {
    EXPECT_TRUE(verify(make_p4(rat(11, 25)).bundle).pass);
    EXPECT_FALSE(verify(make_p4(rat(43, 100)).bundle).pass);
    const Rational eps = rat(11, 25);
    X3Chain c = p4_x3_chain(make_p4(eps));
    EXPECT_LE(c.sup_p, c.sup_orbit);
    EXPECT_LT(c.sup_orbit, 1 - (1 - eps) * (1 - eps) / 3);
    EXPECT_LE(1 - (1 - eps) * (1 - eps) / 3, c.inf_sigma_image);
}

TEST(Continuation, ZeroDeltaReproducesMa) {
    const Rational rho = rat(1, 3), a = 2, eps = rat(43, 100);
    Continuation c = continue_problem2(rho, a, eps, 0);
    ASSERT_EQ(c.entry.bundle.candidates.size(), 2u);
    ConstraintMatrix ma = optimize(embed(ma_matrix(rho, a, eps), alpha_a_extended(a)));
    EXPECT_TRUE(equal_polytopes(c.entry.bundle.candidates[0], ma));
    ConstraintMatrix mirrored = transform_polytope(named_symmetry("sigma_321"), ma);
    EXPECT_TRUE(equal_polytopes(c.entry.bundle.candidates[1], optimize(embed(mirrored, alpha_a_extended(a)))));
    EXPECT_TRUE(verify(c.entry.bundle).pass);
}

TEST(Continuation, FirstCoordinatesAreComplementary) {
    const Rational rho = rat(1, 3), a = rat(7, 4), eps = rat(43, 100);
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> u(-100, 100);
    for (int n = 0; n < 10; ++n) {
        Rational delta = rat(u(rng), 10000);
        Continuation c = continue_problem2(rho, a, eps, delta);
        const auto& q = c.entry.bundle.candidates;
        EXPECT_EQ(q[0].upper(0).value() + q[1].upper(0).value(), 1) << delta;
    }
}

TEST(Continuation, RadiusIsPositiveAtInteriorA) {
    const Rational rho = rat(1, 3), a = rat(7, 4), eps = rat(45, 100);
    for (int sign : {1, -1}) {
        RadiusBracket r = continuation_radius(rho, a, eps, rat(3, 100), rat(1, 1000), sign);
        EXPECT_GE(r.lo, rat(1, 100));
        EXPECT_LE(r.hi, rat(3, 100));
    }
    EXPECT_EQ(kind_of([&] { continuation_radius(rho, a, eps, rat(1, 1000), rat(1, 10000)); }), ErrorKind::NotBracketing);
}
