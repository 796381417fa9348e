#include "random_cases.hpp"

#include <gtest/gtest.h>

using namespace testing_support;

TEST(Oracle, SelfCheckOnKnownTriangle) {
    // x1 > 0, x2 > 0, x1 + x2 < 1 in quarter units.
    oracle::Problem p{2, {{1, 0}, {0, 1}, {1, 1}}, {0, 0, std::nullopt}, {std::nullopt, std::nullopt, 4}};
    oracle::Result r = oracle::solve(p, kBox);
    ASSERT_TRUE(r.closed_nonempty);
    EXPECT_TRUE(r.open_nonempty);
    EXPECT_EQ(static_cast<long>(r.max[0]->num / r.max[0]->den), 4);
    EXPECT_EQ(static_cast<long>(r.min[2]->num), 0);
}

TEST(Oracle, DetectsUnboundedDirections) {
    oracle::Problem p{2, {{1, 0}, {0, 1}}, {0, std::nullopt}, {4, std::nullopt}};
    oracle::Result r = oracle::solve(p, kBox);
    EXPECT_TRUE(r.open_nonempty);
    EXPECT_FALSE(r.min[1]);
    EXPECT_FALSE(r.max[1]);
    ASSERT_TRUE(r.max[0]);
}

TEST(Oracle, OptimizeAgreesOnRandomMatrices) {
    std::mt19937_64 rng(20240601);
    for (int n = 0; n < 600; ++n) {
        RandomCase c = random_case(rng);
        std::string why = compare_with_oracle(c);
        ASSERT_TRUE(why.empty()) << "case " << n << ": " << why;
    }
}
