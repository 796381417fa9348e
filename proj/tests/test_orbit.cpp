#include "iup/catalog.hpp"
#include "iup/error.hpp"
#include "iup/orbit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace iup;

namespace {

Point witness(const ConstraintMatrix& m) {
    Point p;
    for (const auto& v : interior_point(m)) p.push_back(to_double(v));
    return p;
}

}  // namespace

TEST(Cluster, TwoSeparatedClouds) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
    std::vector<Point> pts;
    for (int i = 0; i < 200; ++i) {
        double cx = i % 2 ? 0.5 : 0.2;
        pts.push_back({cx + jitter(rng), 0.2 + jitter(rng)});
    }
    Clustering c = cluster(pts);
    EXPECT_EQ(c.count, 2u);
    EXPECT_EQ(c.assignment[0], 0u);
    EXPECT_EQ(c.assignment[1], 1u);
    EXPECT_GT(c.plateau_high / c.plateau_low, 10.0);
}

TEST(Cluster, IdenticalPointsFormOneCluster) {
    std::vector<Point> pts(50, Point{0.25, 0.75});
    EXPECT_EQ(cluster(pts).count, 1u);
}

TEST(Cluster, GeometricSpacingHasNoPlateau) {
    // Gaps shrink by 0.8 per point: no decade of thresholds keeps the count fixed.
    std::vector<Point> pts;
    for (int i = 0; i < 60; ++i) pts.push_back({std::pow(0.8, i), 0.5});
    try {
        cluster(pts);
        FAIL() << "expected NoPlateau";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoPlateau);
    }
    EXPECT_THROW(cluster({}), Error);
}

TEST(Cluster, WeaklyCoupledOrbitIsOneCluster) {
    // At eps = 0 a double-precision orbit collapses onto 0 after ~50 doublings, so use a small coupling.
    PiecewiseAffineMap map = build_g_map(uniform_rho(2), rat(1, 100), canonical_alpha(2));
    Orbit orbit = simulate(map, {0.3217, 0.3481}, 4000, 100);
    EXPECT_EQ(cluster(orbit.points).count, 1u);
}

TEST(Simulate, DeterministicAndValidated) {
    CatalogEntry e = make_ma(rat(1, 3), 2, rat(43, 100));
    Point seed = random_seed_point(2, 7);
    EXPECT_EQ(seed, random_seed_point(2, 7));
    Orbit a = simulate(e.bundle.map, seed, 500, 100), b = simulate(e.bundle.map, seed, 500, 100);
    EXPECT_EQ(a.points, b.points);
    EXPECT_EQ(a.labels, b.labels);
    EXPECT_EQ(a.points.size() + a.dropped, 500u);
    EXPECT_THROW(simulate(e.bundle.map, seed, 0, 0), Error);
    EXPECT_THROW(simulate(e.bundle.map, {0.5}, 10, 0), Error);
    try {
        simulate(e.bundle.map, {1.5, 0.2}, 10, 0);
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::EscapedAmbient);
    }
}

TEST(Extract, RecoversProblemOneFromItsOwnOrbit) {
    CatalogEntry e = make_ma(rat(1, 3), 2, rat(43, 100));
    Point seed = witness(e.bundle.candidates[0]);
    Orbit orbit = simulate(e.bundle.map, seed, 4000, 1000);
    Clustering c = cluster(orbit.points);
    EXPECT_EQ(c.count, 2u);
    ExtractOptions opt;
    opt.anchor = seed;
    Extraction ex = extract_problem(orbit, c, e.bundle.map, e.bundle.symmetries, opt);
    EXPECT_EQ(ex.problem, problem_3_1());
    EXPECT_TRUE(verify(ex.problem, e.bundle.candidates, e.bundle.map, e.bundle.symmetries).pass);
    EXPECT_EQ(ex.report.representatives.size(), 1u);
}

TEST(Extract, RejectsMismatchedClustering) {
    CatalogEntry e = make_ma(rat(1, 3), 2, rat(43, 100));
    Orbit orbit = simulate(e.bundle.map, witness(e.bundle.candidates[0]), 100, 10);
    Clustering c;
    c.count = 1;
    c.assignment.assign(3, 0);
    EXPECT_THROW(extract_problem(orbit, c, e.bundle.map, e.bundle.symmetries), Error);
}
