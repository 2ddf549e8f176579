#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "subdiff/error.hpp"
#include "subdiff/quadrature.hpp"

using namespace subdiff;

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
    for (int n : {1, 2, 3, 5, 8, 16, 32}) {
        const auto& rule = gauss_legendre(n);
        ASSERT_EQ(rule.size(), n);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (int q = 0; q < n; ++q) s += rule.weights[q] * std::pow(rule.nodes[q], k);
            const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
            EXPECT_NEAR(s, exact, 1e-14) << "n=" << n << " k=" << k;
        }
    }
}

TEST(GaussLegendre, RejectsNonPositiveOrder) { EXPECT_THROW((void)gauss_legendre(0), Error); }

TEST(AdaptiveQuadrature, SmoothIntegrand) {
    const auto r = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, std::numbers::e - 1.0, 1e-14);
}

TEST(AdaptiveQuadrature, EndpointSingularityWithGrading) {
    // int_0^h x^{-1/4} dx = (4/3) h^{3/4}
    for (double h : {0.1, 1.0 / 1280}) {
        AdaptiveOptions opts;
        opts.grade_levels_left = 40;
        const auto r = integrate_adaptive([](double x) { return std::pow(x, -0.25); }, 0.0, h, opts);
        EXPECT_TRUE(r.converged);
        const double exact = 4.0 / 3.0 * std::pow(h, 0.75);
        EXPECT_NEAR(r.value / exact, 1.0, 1e-12) << "h=" << h;
    }
}

TEST(AdaptiveQuadrature, ErrorEstimateIsScaledToTheInterval) {
    const auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1e-3);
    const double exact = 2.0 / 3.0 * std::pow(1e-3, 1.5);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(std::abs(r.value - exact), std::max(r.error, 1e-12 * exact) * 10);
}

TEST(AdaptiveQuadrature, ReportsNonConvergence) {
    AdaptiveOptions opts;
    opts.max_intervals = 1;
    opts.rel_tol = 1e-15;
    const auto r =
        integrate_adaptive([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, opts);
    EXPECT_FALSE(r.converged);
}
