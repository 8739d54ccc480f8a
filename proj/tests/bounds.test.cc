#include <gtest/gtest.h>

#include <cmath>

#include "spidercat/bounds.h"

using namespace spidercat;

TEST(Bounds, ExactRatios) {
    EXPECT_EQ(optimal_ratio(1), Ratio(0));
    EXPECT_EQ(optimal_ratio(2), Ratio(1, 3));
    EXPECT_EQ(optimal_ratio(3), Ratio(2, 3));
    EXPECT_EQ(optimal_ratio(4), Ratio(5, 6));
    EXPECT_EQ(optimal_ratio(5), Ratio(1));
    for (int t = 1; t <= 5; t++) {
        EXPECT_TRUE(optimal_ratio_is_exact(t));
    }
    EXPECT_FALSE(optimal_ratio_is_exact(6));
}

TEST(Bounds, ConjecturedRatiosApproachTwo) {
    for (int t = 6; t <= 40; t++) {
        Ratio r = optimal_ratio(t);
        double expected = t % 2 ? 2.0 - 8.0 / (t + 3) : 2.0 - 8.0 * (t + 3) / ((t + 2.0) * (t + 4.0));
        EXPECT_NEAR(r.value(), expected, 1e-12) << t;
        EXPECT_TRUE(optimal_ratio(t - 1) <= r);
        EXPECT_TRUE(r < Ratio(2));
    }
}

TEST(Bounds, LowerBoundExamples) {
    LowerBounds a = lower_bounds(12, 3);
    EXPECT_EQ(a.cnot_lb, 21);
    EXPECT_EQ(a.flag_lb, 5);
    LowerBounds b = lower_bounds(12, 4);
    EXPECT_EQ(b.cnot_lb, 23);
    EXPECT_EQ(b.flag_lb, 6);
    EXPECT_EQ(lower_bounds(9, 2).cnot_lb, 13);
    EXPECT_EQ(lower_bounds(14, 5).cnot_lb, 29);
    for (int n = 3; n < 40; n++) {
        EXPECT_EQ(lower_bounds(n, 1).cnot_lb, n + 1);
        EXPECT_EQ(lower_bounds(n, 1).flag_lb, 1);
    }
}

TEST(Bounds, MatchesFloatingPointFormula) {
    for (int t = 1; t <= 5; t++) {
        for (int n = 3; n <= 60; n++) {
            double r = optimal_ratio(t).value();
            LowerBounds lb = lower_bounds(n, t);
            EXPECT_EQ(lb.cnot_lb, static_cast<int64_t>(std::ceil(n * (r + 1) - 1e-9)) + 1);
            EXPECT_EQ(lb.flag_lb, static_cast<int64_t>(std::ceil(r / 2 * n - 1e-9)) + 1);
        }
    }
}
