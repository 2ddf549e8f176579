#include "subdiff/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "subdiff/error.hpp"
#include "subdiff/experiments.hpp"
#include "subdiff/fem.hpp"
#include "subdiff/oracle.hpp"
#include "subdiff/stepper.hpp"

namespace subdiff {

namespace {

constexpr double freeze_time = 1.0;

ProblemSpec frozen_problem(double alpha, bool with_source) {
    ProblemSpec p = with_source ? preset_example_b(alpha, freeze_time)
                                : preset_example_a(alpha, freeze_time);
    const double a = 2.0 + std::cos(freeze_time);
    p.coeff = Coefficient::constant(a);
    p.u0 = [](double x) { return std::pow(x, -0.25); };
    p.singular_at_zero = true;
    return p;
}

double relative_gap(const Mesh1D& mesh, std::span<const double> u, std::span<const double> v) {
    std::vector<double> d(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) d[i] = u[i] - v[i];
    const double scale = std::max(l2_norm(mesh, v), 1e-300);
    return l2_norm(mesh, d) / scale;
}

std::string fmt(const char* label, double v) {
    std::ostringstream os;
    os << label << v;
    return os.str();
}

}  // namespace

CheckResult check_discrete_representation(double alpha, int elements, int steps, double tol) {
    const ProblemSpec p = frozen_problem(alpha, true);
    const Mesh1D mesh(elements);
    const auto scheme = SchemeConfig::uniform(Scheme::BackwardEulerCQ, steps, p.final_time);
    const auto traj = step_solve(p, mesh, scheme);
    const double tau = scheme.tau;

    const LoadOptions opts{p.breakpoints, false};
    std::vector<std::vector<double>> pf(steps + 1);
    for (int k = 1; k <= steps; ++k) pf[k] = l2_project(mesh, p.source.at(scheme.time(k)), opts);

    // E^j P_h f(t_k) depends on both indices, so each level is rebuilt from
    // its own operator actions.
    const auto u0 = traj.state(0);
    double worst = 0.0;
    for (int m = 1; m <= steps; ++m) {
        auto rep = eval_discrete_operators(mesh, p.coeff, alpha, tau, freeze_time, m, u0).F;
        for (int k = 1; k <= m; ++k) {
            const auto e = eval_discrete_operators(mesh, p.coeff, alpha, tau, freeze_time, m - k,
                                                   pf[k]).E;
            for (std::size_t i = 0; i < rep.size(); ++i) rep[i] += tau * e[i];
        }
        worst = std::max(worst, relative_gap(mesh, traj.state(m), rep));
    }
    CheckResult r{"discrete representation", worst <= tol, worst, tol, {}};
    std::ostringstream os;
    os << "alpha=" << alpha << " M=" << elements << " N=" << steps;
    r.detail = os.str();
    return r;
}

CheckResult check_homogeneous_representation(double alpha, int elements, int steps, double tol) {
    const ProblemSpec p = frozen_problem(alpha, false);
    const Mesh1D mesh(elements);
    const auto scheme = SchemeConfig::uniform(Scheme::BackwardEulerCQ, steps, p.final_time);
    const auto traj = step_solve(p, mesh, scheme);
    const auto f = eval_discrete_operators(mesh, p.coeff, alpha, scheme.tau, freeze_time, steps,
                                           traj.state(0))
                       .F;
    const double gap = relative_gap(mesh, traj.final_state(), f);
    std::ostringstream os;
    os << "alpha=" << alpha << " M=" << elements << " N=" << steps;
    return {"homogeneous representation", gap <= tol, gap, tol, os.str()};
}

CheckResult check_scalar_dual_path(double alpha, double tol) {
    double worst = 0.0;
    for (double lambda : {0.5, 1.0, 2.0}) {
        for (double t : {1e-3, 0.1, 0.5, 1.0}) {
            if (lambda * std::pow(t, alpha) > 2.0) continue;
            const double c = scalar_fode_contour(alpha, lambda, t);
            const double s = mittag_leffler_series(alpha, lambda * std::pow(t, alpha));
            worst = std::max(worst, std::abs(c - s));
        }
    }
    return {"scalar contour vs series", worst <= tol, worst, tol, fmt("alpha=", alpha)};
}

CheckResult check_kernel_bounds(double alpha, double tau, double max_drift) {
    const KernelBounds a = sample_kernel_bounds(alpha, tau, 1.0, 400);
    const KernelBounds b = sample_kernel_bounds(alpha, 0.5 * tau, 1.0, 400);
    const auto drift = [](double x, double y) { return std::abs(x - y) / std::max(x, y); };
    const double worst = std::max({drift(a.lower, b.lower), drift(a.upper, b.upper),
                                   drift(a.first_order, b.first_order),
                                   drift(a.fractional, b.fractional)});
    const bool sector = a.max_arg < std::numbers::pi && b.max_arg < std::numbers::pi;
    const bool ok = a.lower > 0.0 && b.lower > 0.0 && sector && worst < max_drift;
    std::ostringstream os;
    os << "alpha=" << alpha << " tau=" << tau << " c1=" << b.lower << " c2=" << b.upper
       << " c_frac=" << b.fractional << " max|arg K|=" << b.max_arg;
    return {"kernel bounds", ok, worst, max_drift, os.str()};
}

CheckResult check_semidiscrete_order(double alpha, int elements, double min_order) {
    const ProblemSpec p = frozen_problem(alpha, true);
    const Mesh1D mesh(elements);
    const auto u0 = l2_project(mesh, p.u0, LoadOptions{{}, true});
    auto exact = eval_Fh(mesh, p.coeff, alpha, freeze_time, p.final_time, u0);
    const auto conv = eval_Eh_convolution(mesh, p.coeff, alpha, freeze_time, p.source,
                                          p.final_time);
    for (std::size_t i = 0; i < exact.size(); ++i) exact[i] += conv[i];

    std::vector<double> errors;
    for (int n = 128; n <= 2048; n *= 2) {
        const auto traj =
            step_solve(p, mesh, SchemeConfig::uniform(Scheme::BackwardEulerCQ, n, p.final_time));
        std::vector<double> u(traj.final_state().begin(), traj.final_state().end());
        std::vector<double> d(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) d[i] = u[i] - exact[i];
        errors.push_back(l2_norm(mesh, d));
    }
    double worst = std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "alpha=" << alpha << " orders:";
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double order = std::log2(errors[i] / errors[i + 1]);
        worst = std::min(worst, order);
        os << ' ' << order;
    }
    return {"semidiscrete order", worst >= min_order, worst, min_order, os.str()};
}

double max_perturbation_ratio(const Coefficient& coeff, int elements, int samples) {
    require(samples >= 2, ErrorKind::InvalidArgument, "max_perturbation_ratio: need >= 2 samples");
    const Mesh1D mesh(elements);
    const std::size_t n = static_cast<std::size_t>(mesh.interior());
    std::vector<TriDiagMatrix> stiff;
    for (int j = 0; j < samples; ++j) {
        stiff.push_back(assemble_stiffness(mesh, coeff, static_cast<double>(j) / (samples - 1)));
    }
    double worst = 0.0;
    std::vector<double> e(n, 0.0);
    for (int a = 0; a < samples; ++a) {
        for (int b = 0; b < samples; ++b) {
            if (a == b) continue;
            const double gap = std::abs(a - b) / static_cast<double>(samples - 1);
            for (std::size_t i = 0; i < n; ++i) {
                e.assign(n, 0.0);
                e[i] = 1.0;
                // A_h(t)^{-1} A_h(s) = S(t)^{-1} S(s); the mass matrices cancel
                auto w = solve(stiff[a], stiff[b] * e);
                for (std::size_t k = 0; k < n; ++k) w[k] = e[k] - w[k];
                worst = std::max(worst, l2_norm(mesh, w) / (gap * l2_norm(mesh, e)));
            }
        }
    }
    return worst;
}

}  // namespace subdiff
