#include "subdiff/fem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subdiff/error.hpp"
#include "subdiff/quadrature.hpp"

namespace subdiff {

namespace {

void check_dim(const Mesh1D& mesh, std::size_t n, const char* who) {
    if (n != static_cast<std::size_t>(mesh.interior())) {
        std::ostringstream os;
        os << who << ": vector has " << n << " entries, mesh has " << mesh.interior()
           << " interior nodes";
        fail(ErrorKind::InvalidArgument, os.str());
    }
}

// Break points of element [a, b]: a, any declared breakpoints strictly
// inside, b.
std::vector<double> element_pieces(double a, double b, std::span<const double> breakpoints) {
    std::vector<double> cuts{a};
    for (double p : breakpoints) {
        if (p > a && p < b) cuts.push_back(p);
    }
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(b);
    return cuts;
}

}  // namespace

TriDiagMatrix assemble_mass(const Mesh1D& mesh) {
    const int n = mesh.interior();
    const double h = mesh.h();
    TriDiagMatrix m(n);
    std::fill(m.diag.begin(), m.diag.end(), 2.0 * h / 3.0);
    std::fill(m.off.begin(), m.off.end(), h / 6.0);
    return m;
}

TriDiagMatrix assemble_stiffness(const Mesh1D& mesh, const Coefficient& coeff, double t,
                                 int quad_order) {
    require(quad_order >= 2, ErrorKind::InvalidArgument,
            "assemble_stiffness: quad_order must be >= 2");
    const GaussRule& rule = gauss_legendre(quad_order);
    const int M = mesh.elements();
    const double h = mesh.h();
    const double lo = (1.0 / coeff.lambda) * (1.0 - 1e-12);
    const double hi = coeff.lambda * (1.0 + 1e-12);

    TriDiagMatrix k(mesh.interior());
    for (int e = 0; e < M; ++e) {
        const double xl = mesh.node(e);
        const double xr = mesh.node(e + 1);
        double integral = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
            const double x = 0.5 * (xl + xr) + 0.5 * h * rule.nodes[q];
            const double a = coeff(x, t);
            if (!(a >= lo && a <= hi)) {
                std::ostringstream os;
                os << "coefficient a(" << x << ", " << t << ") = " << a << " is outside ["
                   << 1.0 / coeff.lambda << ", " << coeff.lambda << "]";
                fail(ErrorKind::CoefficientBound, os.str());
            }
            integral += 0.5 * h * rule.weights[q] * a;
        }
        const double ke = integral / (h * h);
        // element e couples nodes e and e+1; interior index = node - 1
        if (e >= 1) k.diag[e - 1] += ke;
        if (e + 1 <= M - 1) k.diag[e] += ke;
        if (e >= 1 && e + 1 <= M - 1) k.off[e - 1] -= ke;
    }
    return k;
}

std::vector<double> load_vector(const Mesh1D& mesh, const SpaceFn& g, const LoadOptions& opts) {
    const int M = mesh.elements();
    const double h = mesh.h();
    std::vector<double> load(mesh.interior(), 0.0);
    if (!g) return load;

    for (int e = 0; e < M; ++e) {
        const double xl = mesh.node(e);
        const double xr = mesh.node(e + 1);
        const auto cuts = element_pieces(xl, xr, opts.breakpoints);

        auto integrate_against = [&](auto&& shape) {
            double total = 0.0;
            for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
                AdaptiveOptions ao;
                ao.rel_tol = opts.rel_tol;
                if (opts.singular_at_zero && e == 0 && p == 0) ao.grade_levels_left = 40;
                const auto r = integrate_adaptive(
                    [&](double x) { return g(x) * shape(x); }, cuts[p], cuts[p + 1], ao);
                if (!r.converged) {
                    std::ostringstream os;
                    os << "adaptive quadrature did not converge on element " << e << " ["
                       << cuts[p] << ", " << cuts[p + 1] << "] (estimated error " << r.error
                       << " after " << r.intervals << " intervals)";
                    fail(ErrorKind::Quadrature, os.str());
                }
                total += r.value;
            }
            return total;
        };

        // left node e (interior iff e >= 1), right node e+1 (interior iff e+1 <= M-1)
        if (e >= 1) load[e - 1] += integrate_against([&](double x) { return (xr - x) / h; });
        if (e + 1 <= M - 1) load[e] += integrate_against([&](double x) { return (x - xl) / h; });
    }
    return load;
}

std::vector<double> l2_project(const Mesh1D& mesh, const SpaceFn& g, const LoadOptions& opts) {
    return solve(assemble_mass(mesh), load_vector(mesh, g, opts));
}

std::vector<double> ritz_load(const Mesh1D& mesh, const Coefficient& coeff, double t,
                              const SpaceFn& dg, int quad_order) {
    require(quad_order >= 1, ErrorKind::InvalidArgument, "ritz_load: quad_order must be >= 1");
    const GaussRule& rule = gauss_legendre(quad_order);
    const int M = mesh.elements();
    const double h = mesh.h();
    std::vector<double> rhs(mesh.interior(), 0.0);
    for (int e = 0; e < M; ++e) {
        const double xl = mesh.node(e);
        const double xr = mesh.node(e + 1);
        double integral = 0.0;  // int_e a g'
        for (int q = 0; q < rule.size(); ++q) {
            const double x = 0.5 * (xl + xr) + 0.5 * h * rule.nodes[q];
            integral += 0.5 * h * rule.weights[q] * coeff(x, t) * dg(x);
        }
        // phi_e' = -1/h on element e (node e is the left end), phi_{e+1}' = +1/h
        if (e >= 1) rhs[e - 1] -= integral / h;
        if (e + 1 <= M - 1) rhs[e] += integral / h;
    }
    return rhs;
}

std::vector<double> ritz_project(const Mesh1D& mesh, const Coefficient& coeff, double t,
                                 const SpaceFn& dg, int quad_order) {
    const auto stiff = assemble_stiffness(mesh, coeff, t, std::max(2, quad_order));
    return solve(stiff, ritz_load(mesh, coeff, t, dg, quad_order));
}

double l2_norm(const Mesh1D& mesh, std::span<const double> v) {
    check_dim(mesh, v.size(), "l2_norm");
    const double h = mesh.h();
    // v^T M v summed element-wise: (h/3)(a^2 + ab + b^2) per element
    double s = 0.0;
    double left = 0.0;
    for (std::size_t i = 0; i <= v.size(); ++i) {
        const double right = i < v.size() ? v[i] : 0.0;
        s += left * left + left * right + right * right;
        left = right;
    }
    return std::sqrt(std::max(0.0, s * h / 3.0));
}

std::vector<double> interpolate(const Mesh1D& mesh, const SpaceFn& g) {
    std::vector<double> v(mesh.interior());
    for (int i = 1; i < mesh.elements(); ++i) v[i - 1] = g(mesh.node(i));
    return v;
}

std::vector<double> prolong(const Mesh1D& coarse, const Mesh1D& fine, std::span<const double> v) {
    check_dim(coarse, v.size(), "prolong");
    const int mc = coarse.elements();
    const int mf = fine.elements();
    if (mf % mc != 0) {
        std::ostringstream os;
        os << "prolong: meshes are not nested (" << mf << " is not a multiple of " << mc << ")";
        fail(ErrorKind::InvalidArgument, os.str());
    }
    const int r = mf / mc;
    auto coarse_value = [&](int node) { return node <= 0 || node >= mc ? 0.0 : v[node - 1]; };
    std::vector<double> out(fine.interior());
    for (int j = 1; j < mf; ++j) {
        const int c = j / r;
        const int s = j % r;
        out[j - 1] = s == 0 ? coarse_value(c)
                            : (static_cast<double>(r - s) * coarse_value(c) +
                               static_cast<double>(s) * coarse_value(c + 1)) /
                                  static_cast<double>(r);
    }
    return out;
}

}  // namespace subdiff
