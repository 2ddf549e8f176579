#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "subdiff/checks.hpp"
#include "subdiff/experiments.hpp"
#include "subdiff/fem.hpp"

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

double min_eigenvalue(const TriDiagMatrix& A) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(A));
    return es.eigenvalues().minCoeff();
}

// (x^{-1/4}, phi_i) in closed form from (4/3) x^{3/4} and (4/7) x^{7/4}.
double singular_load(const Mesh1D& mesh, int i) {
    const double h = mesh.h();
    const auto F0 = [](double x) { return 4.0 / 3.0 * std::pow(x, 0.75); };
    const auto F1 = [](double x) { return 4.0 / 7.0 * std::pow(x, 1.75); };
    const double xl = mesh.node(i - 1), xc = mesh.node(i), xr = mesh.node(i + 1);
    const double left = (F1(xc) - F1(xl) - xl * (F0(xc) - F0(xl))) / h;
    const double right = (xr * (F0(xr) - F0(xc)) - (F1(xr) - F1(xc))) / h;
    return left + right;
}

}  // namespace

TEST(Mesh, NodesAndValidation) {
    const Mesh1D m(5);
    EXPECT_EQ(m.interior(), 4);
    EXPECT_DOUBLE_EQ(m.node(0), 0.0);
    EXPECT_DOUBLE_EQ(m.node(5), 1.0);
    EXPECT_DOUBLE_EQ(m.h() * m.elements(), 1.0);
    EXPECT_THROW(Mesh1D(1), Error);
}

TEST(Assembly, MassEntries) {
    const Mesh1D m(4);
    const auto M = assemble_mass(m);
    ASSERT_EQ(M.size(), 3u);
    for (double d : M.diag) EXPECT_DOUBLE_EQ(d, 2.0 * m.h() / 3.0);
    for (double o : M.off) EXPECT_DOUBLE_EQ(o, m.h() / 6.0);
}

TEST(Assembly, StiffnessForConstantAndLinearCoefficients) {
    const Mesh1D m(8);
    const auto S = assemble_stiffness(m, cosine_coefficient(), 0.0);
    for (double d : S.diag) EXPECT_NEAR(d, 3.0 * 2.0 / m.h(), 1e-12);
    for (double o : S.off) EXPECT_NEAR(o, -3.0 / m.h(), 1e-12);

    Coefficient lin;
    lin.eval = [](double x, double) { return 1.0 + x; };
    lin.lambda = 2.0;
    const auto L = assemble_stiffness(m, lin, 0.0);
    // element k contributes mean(a) / h = (1 + (k + 1/2) h) / h
    for (int i = 1; i < m.elements(); ++i) {
        const double left = 1.0 + (i - 0.5) * m.h();
        const double right = 1.0 + (i + 0.5) * m.h();
        EXPECT_NEAR(L.diag[i - 1], (left + right) / m.h(), 1e-12);
        if (i + 1 < m.elements()) EXPECT_NEAR(L.off[i - 1], -right / m.h(), 1e-12);
    }
}

TEST(Assembly, SymmetricPositiveDefiniteAcrossTimes) {
    for (int M : {4, 16, 64}) {
        const Mesh1D m(M);
        EXPECT_GT(min_eigenvalue(assemble_mass(m)), 0.0);
        for (double t : {0.0, 0.5, 1.0, 2.0, 3.14159, 10.0}) {
            EXPECT_GT(min_eigenvalue(assemble_stiffness(m, cosine_coefficient(), t)), 0.0);
        }
    }
}

TEST(Assembly, CoefficientOutsideBoundsIsRejected) {
    Coefficient c;
    c.eval = [](double, double) { return 0.1; };
    c.lambda = 2.0;
    try {
        (void)assemble_stiffness(Mesh1D(4), c, 0.0);
        FAIL() << "expected CoefficientBound";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CoefficientBound);
    }
}

TEST(Load, ConstantFunction) {
    const Mesh1D m(10);
    const auto b = load_vector(m, [](double) { return 1.0; });
    for (double v : b) EXPECT_NEAR(v, m.h(), 1e-15);
    const auto p = l2_project(Mesh1D(64), [](double) { return 1.0; });
    // boundary layer decays like (2 - sqrt 3)^k away from the ends
    EXPECT_NEAR(p[31], 1.0, 1e-12);
}

TEST(Load, SingularInitialDataMatchesClosedForm) {
    for (int M : {10, 1280}) {
        const Mesh1D m(M);
        LoadOptions opts;
        opts.singular_at_zero = true;
        const auto b = load_vector(m, [](double x) { return std::pow(x, -0.25); }, opts);
        for (int i : {1, 2, M / 2, M - 1}) {
            const double exact = singular_load(m, i);
            // the closed form cancels like (x_i / h)^2 away from the singularity
            const double tol = 1e-12 + 1e-15 * i * i;
            EXPECT_NEAR(b[i - 1] / exact, 1.0, tol) << "M=" << M << " i=" << i;
        }
    }
}

TEST(Load, DiscontinuityInsideAnElementIsSplit) {
    // M odd puts x = 1/2 inside element (M-1)/2
    const Mesh1D m(5);
    const std::vector<double> bp{0.5};
    LoadOptions opts;
    opts.breakpoints = bp;
    const auto g = [](double x) { return x < 0.5 ? 2.0 : 1.0; };
    const auto b = load_vector(m, g, opts);
    // node 2 (x = 0.4): left element fully 2, right element [0.4, 0.6] split at 0.5
    const double h = m.h();
    const double left = 2.0 * h / 2.0;
    const auto hat_right = [&](double a, double c) {  // int_a^c (0.6 - x)/h dx
        return ((0.6 - a) * (0.6 - a) - (0.6 - c) * (0.6 - c)) / (2.0 * h);
    };
    const double right = 2.0 * hat_right(0.4, 0.5) + 1.0 * hat_right(0.5, 0.6);
    EXPECT_NEAR(b[1], left + right, 1e-14);
}

TEST(Projection, RitzInterpolatesInOneDimension) {
    const Mesh1D m(16);
    const auto c = Coefficient::constant(1.0);
    const auto r = ritz_project(m, c, 0.0, [](double x) { return 1.0 - 2.0 * x; });
    const auto nodes = m.interior_nodes();
    for (std::size_t i = 0; i < r.size(); ++i) {
        EXPECT_NEAR(r[i], nodes[i] * (1.0 - nodes[i]), 1e-14);
    }
}

TEST(Projection, RitzErrorIsSecondOrder) {
    // compare R_h g against a dense-mesh interpolant of g = x(1 - x)
    const auto c = Coefficient::constant(1.0);
    const auto g = [](double x) { return x * (1.0 - x); };
    const Mesh1D fine(1024);
    const auto gf = interpolate(fine, g);
    std::vector<double> errs;
    for (int M : {8, 16, 32}) {
        const Mesh1D m(M);
        auto d = prolong(m, fine, ritz_project(m, c, 0.0, [](double x) { return 1.0 - 2.0 * x; }));
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= gf[i];
        errs.push_back(l2_norm(fine, d));
    }
    EXPECT_NEAR(errs[0] / errs[1], 4.0, 0.1);
    EXPECT_NEAR(errs[1] / errs[2], 4.0, 0.1);
}

TEST(Norms, InterpolantOfSine) {
    const Mesh1D m(160);
    const auto v = interpolate(m, [](double x) { return std::sin(std::numbers::pi * x); });
    EXPECT_NEAR(l2_norm(m, v), std::sqrt(0.5), 1e-4);
}

TEST(Norms, MatchesMassMatrixForm) {
    const Mesh1D m(7);
    const std::vector<double> v{0.3, -1.0, 2.0, 0.5, 0.0, 1.5};
    EXPECT_NEAR(l2_norm(m, v) * l2_norm(m, v), assemble_mass(m).bilinear(v, v), 1e-14);
}

TEST(Prolongation, HatOnNestedMesh) {
    const auto p = prolong(Mesh1D(2), Mesh1D(4), std::vector<double>{1.0});
    EXPECT_EQ(p, (std::vector<double>{0.5, 1.0, 0.5}));
    EXPECT_THROW((void)prolong(Mesh1D(3), Mesh1D(4), std::vector<double>{1.0, 1.0}), Error);
}

TEST(Prolongation, PreservesTheFunction) {
    const Mesh1D c(8), f(64);
    const auto v = interpolate(c, [](double x) { return std::sin(3.0 * x) * x * (1.0 - x); });
    EXPECT_NEAR(l2_norm(c, v), l2_norm(f, prolong(c, f, v)), 1e-14);
}

TEST(Perturbation, RatioStaysBoundedUnderMeshDoubling) {
    Coefficient mixed;
    mixed.eval = [](double x, double t) { return 2.0 + std::cos(t) * x; };
    mixed.lambda = 3.0;
    for (const auto& c : {cosine_coefficient(), mixed}) {
        double prev = max_perturbation_ratio(c, 8, 6);
        for (int M : {16, 32, 64}) {
            const double r = max_perturbation_ratio(c, M, 6);
            EXPECT_LT(r, 1.1 * prev) << "M=" << M;
            prev = r;
        }
        EXPECT_LT(prev, 10.0);
    }
}
