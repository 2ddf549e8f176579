#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "subdiff/checks.hpp"
#include "subdiff/experiments.hpp"
#include "subdiff/fem.hpp"
#include "subdiff/oracle.hpp"

using namespace subdiff;

namespace {

Eigen::MatrixXd dense(const TriDiagMatrix& A) {
    const auto n = static_cast<Eigen::Index>(A.size());
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        D(i, i) = A.diag[i];
        if (i + 1 < n) D(i, i + 1) = D(i + 1, i) = A.off[i];
    }
    return D;
}

// S V = M V diag(lam) with V^T M V = I
struct Pencil {
    Eigen::MatrixXd V;
    Eigen::VectorXd lam;
    Eigen::MatrixXd M;

    Pencil(const Mesh1D& m, const Coefficient& c, double t0) {
        M = dense(assemble_mass(m));
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
            dense(assemble_stiffness(m, c, t0)), M);
        V = es.eigenvectors();
        lam = es.eigenvalues();
    }

    template <class F>
    Eigen::VectorXd apply(F&& g, const std::vector<double>& v) const {
        const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
        Eigen::VectorXd c = V.transpose() * (M * x);
        for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= g(lam(i));
        return V * c;
    }
};

double rel_diff(const std::vector<double>& a, const Eigen::VectorXd& b) {
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(a.data(), a.size());
    return (x - b).norm() / b.norm();
}

// Relative to the input: F_h(t) v can be tiny at large t.
double diff_vs_input(const std::vector<double>& a, const Eigen::VectorXd& b,
                     const std::vector<double>& v) {
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(a.data(), a.size());
    return (x - b).norm() / Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()).norm();
}

std::vector<double> bump(const Mesh1D& m) {
    return interpolate(m, [](double x) { return x * (1.0 - x) * (1.0 + 3.0 * x); });
}

}  // namespace

TEST(Contour, NodesAreConjugateSymmetric) {
    ContourConfig cfg;
    const auto nodes = sector_contour(cfg, 1.0, 60.0);
    ASSERT_EQ(nodes.size() % 2, 0u);
    std::complex<double> s{};
    for (const auto& n : nodes) s += n.weight * std::exp(n.z);
    EXPECT_NEAR(std::abs(s), 0.0, 1e-12);
    cfg.theta = 0.4;
    EXPECT_THROW(cfg.validate(), Error);
}

TEST(Scalar, MittagLefflerHalfAtMinusOne) {
    const double exact = std::numbers::e * std::erfc(1.0);
    EXPECT_NEAR(mittag_leffler_series(0.5, 1.0), exact, 1e-15);
    EXPECT_NEAR(scalar_fode_contour(0.5, 1.0, 1.0), exact, 1e-12);
    EXPECT_NEAR(scalar_fode_reference(0.5, 1.0, 1.0), exact, 1e-12);
}

TEST(Scalar, ExponentialAtAlphaOne) {
    for (double t : {0.01, 0.5, 2.0}) {
        EXPECT_NEAR(scalar_fode_contour(1.0, 3.0, t), std::exp(-3.0 * t), 1e-12);
    }
}

TEST(Operators, FhApproachesIdentityAsTimeVanishes) {
    const Mesh1D m(16);
    const auto v = bump(m);
    const auto c = cosine_coefficient();
    const auto f = eval_Fh(m, c, 0.5, 0.0, 1e-12, v);
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) d = std::max(d, std::abs(f[i] - v[i]));
    EXPECT_LT(d, 1e-3);
}

TEST(Operators, AlphaOneMatchesMatrixExponential) {
    const Mesh1D m(16);
    const auto c = cosine_coefficient();
    const Pencil pen(m, c, 0.3);
    const auto v = bump(m);
    for (double t : {0.01, 0.1, 1.0}) {
        const auto F = eval_Fh(m, c, 1.0, 0.3, t, v);
        EXPECT_LT(diff_vs_input(F, pen.apply([&](double l) { return std::exp(-l * t); }, v), v), 1e-12);
        const auto E = eval_Eh(m, c, 1.0, 0.3, t, v);
        EXPECT_LT(diff_vs_input(E, pen.apply([&](double l) { return std::exp(-l * t); }, v), v), 1e-12);
    }
}

TEST(Operators, FractionalFhMatchesEigenExpansion) {
    const Mesh1D m(12);
    const auto c = Coefficient::constant(1.0);
    const Pencil pen(m, c, 0.0);
    const auto v = bump(m);
    const double alpha = 0.5, t = 0.2;
    const auto F = eval_Fh(m, c, alpha, 0.0, t, v);
    const auto ref = pen.apply([&](double l) { return scalar_fode_contour(alpha, l, t); }, v);
    EXPECT_LT(rel_diff(F, ref), 1e-10);
}

TEST(Operators, ConvolutionMatchesEigenExpansion) {
    // int_0^t E(t - s) f ds with f = 1 in time equals (I - F(t)) A^{-1} f
    const Mesh1D m(12);
    const auto c = cosine_coefficient();
    const Pencil pen(m, c, 0.0);
    const auto profile = [](double x) { return std::sin(2.0 * x) + 1.0; };
    const auto src = SourceTerm::separable([](double) { return 1.0; }, profile);
    const double alpha = 0.6, t = 0.7;
    const auto conv = eval_Eh_convolution(m, c, alpha, 0.0, src, t);
    const auto ph = l2_project(m, profile);
    const auto ref = pen.apply(
        [&](double l) { return (1.0 - scalar_fode_contour(alpha, l, t)) / l; }, ph);
    EXPECT_LT(rel_diff(conv, ref), 1e-8);
}

TEST(Operators, ZeroIndexDiscreteOperatorIsOneImplicitStep) {
    const Mesh1D m(16);
    const auto c = cosine_coefficient();
    const auto v = bump(m);
    const double alpha = 0.4, tau = 0.05;
    const auto ops = eval_discrete_operators(m, c, alpha, tau, 0.0, 0, v);
    EXPECT_EQ(ops.F, v);
    const auto sys = combine(std::pow(tau, -alpha), assemble_mass(m), 1.0,
                             assemble_stiffness(m, c, 0.0));
    const auto step = solve(sys, assemble_mass(m) * v);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(tau * ops.E[i], step[i], 1e-11);
}

TEST(Operators, StableUnderQuadratureDoubling) {
    const Mesh1D m(16);
    const auto c = cosine_coefficient();
    const auto v = bump(m);
    ContourConfig a, b;
    a.n_quad = 32;
    b.n_quad = 64;
    for (double t : {1e-3, 0.1, 1.0}) {
        const auto fa = eval_Fh(m, c, 0.5, 0.0, t, v, a);
        const auto fb = eval_Fh(m, c, 0.5, 0.0, t, v, b);
        double d = 0.0, n = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            d = std::max(d, std::abs(fa[i] - fb[i]));
            n = std::max(n, std::abs(fb[i]));
        }
        EXPECT_LT(d, 1e-12 * n) << "t=" << t;
    }
}

TEST(Operators, SmoothingBound) {
    // ||A_h F_h(t) v|| <= C t^{-alpha} ||v|| with C independent of t
    const Mesh1D m(32);
    const auto c = Coefficient::constant(1.0);
    const auto mass = assemble_mass(m);
    const auto stiff = assemble_stiffness(m, c, 0.0);
    std::vector<double> v(m.interior(), 0.0);
    v[m.interior() / 2] = 1.0;
    const double alpha = 0.5;
    double cmax = 0.0;
    for (double t : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
        const auto f = eval_Fh(m, c, alpha, 0.0, t, v);
        const auto af = solve(mass, stiff * f);
        cmax = std::max(cmax, l2_norm(m, af) * std::pow(t, alpha) / l2_norm(m, v));
    }
    EXPECT_LT(cmax, 2.0);
}

TEST(Checks, RepresentationAndDualPathPass) {
    for (double alpha : {0.25, 0.75}) {
        EXPECT_TRUE(check_homogeneous_representation(alpha, 8, 16, 1e-8).passed);
        EXPECT_TRUE(check_discrete_representation(alpha, 8, 8, 1e-8).passed);
        EXPECT_TRUE(check_scalar_dual_path(alpha, 1e-10).passed);
        EXPECT_TRUE(check_kernel_bounds(alpha, 1e-2).passed);
    }
    EXPECT_FALSE(check_homogeneous_representation(0.5, 8, 16, 1e-18).passed);
}

TEST(Checks, KernelBoundsAreConsistent) {
    const auto k = sample_kernel_bounds(0.5, 1e-2, 1.0, 200);
    EXPECT_GT(k.lower, 0.0);
    EXPECT_LE(k.lower, 1.0);
    EXPECT_GE(k.upper, 1.0 - 1e-12);
    EXPECT_LT(k.max_arg, std::numbers::pi);
    EXPECT_TRUE(std::isfinite(k.first_order) && std::isfinite(k.fractional));
}
