#include "subdiff/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subdiff/error.hpp"
#include "subdiff/fem.hpp"
#include "subdiff/tridiag.hpp"

namespace subdiff {

namespace {

void axpy(double a, const double* __restrict x, double* __restrict y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

int history_block(int dofs) {
    // keep the block of partial sums around 256 KiB
    return std::clamp(32768 / std::max(dofs, 1), 4, 64);
}

}  // namespace

Trajectory step_solve(const ProblemSpec& problem, const Mesh1D& mesh, const SchemeConfig& scheme,
                      const StepOptions& opts) {
    problem.validate();
    const LoadOptions lo{problem.breakpoints, problem.singular_at_zero};
    const auto initial = problem.u0 ? l2_project(mesh, problem.u0, lo)
                                    : std::vector<double>(mesh.interior(), 0.0);
    return step_solve_from(problem, mesh, scheme, initial, opts);
}

Trajectory step_solve_from(const ProblemSpec& problem, const Mesh1D& mesh,
                           const SchemeConfig& scheme, std::span<const double> initial,
                           const StepOptions& opts) {
    problem.validate();
    require(scheme.steps >= 1 && scheme.tau > 0.0, ErrorKind::InvalidArgument,
            "invalid time grid");
    if (std::abs(scheme.final_time() - problem.final_time) > 1e-12 * problem.final_time) {
        std::ostringstream os;
        os << "time grid ends at " << scheme.final_time() << " but final_time is "
           << problem.final_time;
        fail(ErrorKind::InvalidArgument, os.str());
    }
    const std::size_t dofs = static_cast<std::size_t>(mesh.interior());
    require(initial.size() == dofs, ErrorKind::InvalidArgument,
            "initial state has the wrong dimension");

    const int N = scheme.steps;
    const double tau = scheme.tau;
    const WeightTable w = make_weights(scheme.scheme, problem.alpha, N);
    const double tau_alpha = std::pow(tau, -problem.alpha);
    const double lead = w.b[0] * tau_alpha;

    const TriDiagMatrix mass = assemble_mass(mesh);
    const LoadOptions lo{problem.breakpoints, problem.singular_at_zero};
    std::vector<double> profile_load;
    if (problem.source.is_separable()) profile_load = load_vector(mesh, problem.source.profile(), lo);

    Trajectory traj(mesh, scheme);
    std::copy(initial.begin(), initial.end(), traj.state(0).begin());

    // shifted[k] = u^k - u^0, shifted[0] = 0
    std::vector<double> shifted(static_cast<std::size_t>(N + 1) * dofs, 0.0);
    auto shifted_row = [&](int k) { return shifted.data() + static_cast<std::size_t>(k) * dofs; };

    std::vector<double> mass_u0(dofs);
    mass.multiply<double>(initial, mass_u0);

    const int block = history_block(static_cast<int>(dofs));
    std::vector<double> far(static_cast<std::size_t>(block) * dofs);
    std::vector<double> hist(dofs), mass_hist(dofs), rhs(dofs), scratch(dofs);

    for (int n0 = 1; n0 <= N; n0 += block) {
        const int rows = std::min(block, N - n0 + 1);
        // contributions of levels 1 .. n0-1 to every level of this block
        std::fill(far.begin(), far.end(), 0.0);
        for (int k = 1; k < n0; ++k) {
            const double* wk = shifted_row(k);
            for (int r = 0; r < rows; ++r) {
                axpy(w.b[n0 + r - k], wk, far.data() + static_cast<std::size_t>(r) * dofs, dofs);
            }
        }

        for (int r = 0; r < rows; ++r) {
            const int n = n0 + r;
            const double tn = scheme.time(n);

            std::copy_n(far.data() + static_cast<std::size_t>(r) * dofs, dofs, hist.begin());
            for (int k = n0; k < n; ++k) axpy(w.b[n - k], shifted_row(k), hist.data(), dofs);
            mass.multiply<double>(hist, mass_hist);

            // (lead M + S(t_n)) u^n = F(t_n) + lead M u^0 - tau^{-alpha} M hist
            if (problem.source.is_zero()) {
                std::fill(rhs.begin(), rhs.end(), 0.0);
            } else if (problem.source.is_separable()) {
                const double g = problem.source.time_factor(tn);
                for (std::size_t i = 0; i < dofs; ++i) rhs[i] = g * profile_load[i];
            } else {
                rhs = load_vector(mesh, problem.source.at(tn), lo);
            }
            for (std::size_t i = 0; i < dofs; ++i) {
                rhs[i] += lead * mass_u0[i] - tau_alpha * mass_hist[i];
            }

            auto system = assemble_stiffness(mesh, problem.coeff, tn, opts.quad_order);
            for (std::size_t i = 0; i < dofs; ++i) system.diag[i] += lead * mass.diag[i];
            for (std::size_t i = 0; i + 1 < dofs; ++i) system.off[i] += lead * mass.off[i];
            solve_in_place<double>(system, rhs, scratch);

            auto un = traj.state(n);
            std::copy(rhs.begin(), rhs.end(), un.begin());
            double* wn = shifted_row(n);
            for (std::size_t i = 0; i < dofs; ++i) wn[i] = rhs[i] - initial[i];
        }
    }
    return traj;
}

}  // namespace subdiff
