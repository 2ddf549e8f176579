#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "subdiff/error.hpp"
#include "subdiff/weights.hpp"

using namespace subdiff;

TEST(CqWeights, LeadingEntriesAndSigns) {
    const auto w = cq_weights(0.5, 4);
    ASSERT_EQ(w.max_index(), 4);
    EXPECT_DOUBLE_EQ(w.b[0], 1.0);
    EXPECT_DOUBLE_EQ(w.b[1], -0.5);
    EXPECT_DOUBLE_EQ(w.b[2], -0.125);
    for (int j = 1; j <= 4; ++j) EXPECT_LT(w.b[j], 0.0);
}

TEST(CqWeights, PartialSumsArePositiveAndDecreasing) {
    for (double alpha : {0.1, 0.25, 0.5, 0.75, 0.999}) {
        const auto w = cq_weights(alpha, 10000);
        double s = 0.0, prev = 2.0;
        for (int n = 0; n <= 10000; ++n) {
            s += w.b[n];
            ASSERT_GT(s, 0.0) << "alpha=" << alpha << " n=" << n;
            ASSERT_LT(s, prev) << "alpha=" << alpha << " n=" << n;
            prev = s;
        }
        // sum_{j<=n} b_j = binom(n - alpha, n) ~ n^{-alpha} / Gamma(1 - alpha)
        EXPECT_NEAR(s * std::pow(10000.0, alpha) * std::tgamma(1.0 - alpha), 1.0, 1e-3);
    }
}

TEST(Weights, RejectInvalidInput) {
    EXPECT_THROW((void)cq_weights(0.0, 4), Error);
    EXPECT_THROW((void)cq_weights(1.0, 4), Error);
    EXPECT_THROW((void)l1_weights(0.5, -1), Error);
    EXPECT_EQ(make_weights(Scheme::L1, 0.3, 3).scheme, Scheme::L1);
}

TEST(L1Weights, ExactOnLinearFunctions) {
    const int N = 50;
    const double tau = 0.02;
    for (double alpha : {0.25, 0.5, 0.75}) {
        const auto w = l1_weights(alpha, N);
        std::vector<double> phi(N + 1);
        for (int n = 0; n <= N; ++n) phi[n] = 3.0 + 2.0 * n * tau;
        for (int n = 1; n <= N; ++n) {
            const double exact = 2.0 * std::pow(n * tau, 1.0 - alpha) / std::tgamma(2.0 - alpha);
            EXPECT_NEAR(discrete_caputo_derivative(w, tau, phi, n), exact, 1e-12 * (1.0 + exact));
        }
    }
}

TEST(DiscreteCaputo, ConvergesOnQuadratic) {
    // Caputo derivative of t^2 is 2 t^{2 - alpha} / Gamma(3 - alpha)
    const double alpha = 0.5;
    const double exact = 2.0 / std::tgamma(3.0 - alpha);
    for (Scheme s : {Scheme::BackwardEulerCQ, Scheme::L1}) {
        double prev = INFINITY;
        for (int N : {16, 32, 64, 128}) {
            const double tau = 1.0 / N;
            const auto w = make_weights(s, alpha, N);
            std::vector<double> phi(N + 1);
            for (int n = 0; n <= N; ++n) phi[n] = (n * tau) * (n * tau);
            const double err = std::abs(discrete_caputo_derivative(w, tau, phi, N) - exact);
            EXPECT_LT(err, 0.6 * prev) << to_string(s) << " N=" << N;
            prev = err;
        }
    }
}

TEST(DiscreteCaputo, VectorAndScalarFormsAgree) {
    const auto w = cq_weights(0.4, 6);
    std::vector<double> scalar{0.1, 0.5, -0.2, 0.7, 1.1, 0.3, 0.0};
    std::vector<std::vector<double>> vec;
    for (double v : scalar) vec.push_back({v, 2.0 * v});
    for (int n = 0; n <= 6; ++n) {
        const auto dv = discrete_caputo_derivative(w, 0.1, vec, n);
        const double ds = discrete_caputo_derivative(w, 0.1, scalar, n);
        EXPECT_NEAR(dv[0], ds, 1e-14);
        EXPECT_NEAR(dv[1], 2.0 * ds, 1e-14);
    }
}
