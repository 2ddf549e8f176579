#pragma once

#include <span>
#include <vector>

#include "subdiff/mesh.hpp"
#include "subdiff/problem.hpp"
#include "subdiff/weights.hpp"

namespace subdiff {

/// Fully discrete states u_h^0 .. u_h^N on the interior nodes, stored
/// row-major (one row per time level).
class Trajectory {
public:
    Trajectory(Mesh1D mesh, SchemeConfig scheme)
        : mesh_(mesh), scheme_(scheme),
          data_(static_cast<std::size_t>(scheme.steps + 1) * mesh.interior(), 0.0) {}

    [[nodiscard]] const Mesh1D& mesh() const noexcept { return mesh_; }
    [[nodiscard]] const SchemeConfig& scheme() const noexcept { return scheme_; }
    [[nodiscard]] int steps() const noexcept { return scheme_.steps; }
    [[nodiscard]] double time(int n) const noexcept { return scheme_.time(n); }

    [[nodiscard]] std::span<const double> state(int n) const {
        return {data_.data() + offset(n), static_cast<std::size_t>(mesh_.interior())};
    }
    [[nodiscard]] std::span<double> state(int n) {
        return {data_.data() + offset(n), static_cast<std::size_t>(mesh_.interior())};
    }
    [[nodiscard]] std::span<const double> final_state() const { return state(steps()); }

private:
    [[nodiscard]] std::size_t offset(int n) const {
        return static_cast<std::size_t>(n) * static_cast<std::size_t>(mesh_.interior());
    }

    Mesh1D mesh_;
    SchemeConfig scheme_;
    std::vector<double> data_;
};

struct StepOptions {
    int quad_order = 2;  // Gauss points per element for the stiffness matrix
};

/// Solves, for n = 1..N,
///   dbar^alpha (u^n - u^0) + A_h(t_n) u^n = P_h f(t_n),  u^0 = P_h u0,
/// with the stiffness matrix reassembled at every t_n. The convolution
/// history is summed directly (O(N^2) work), in cache-sized blocks of
/// time levels.
Trajectory step_solve(const ProblemSpec& problem, const Mesh1D& mesh, const SchemeConfig& scheme,
                      const StepOptions& opts = {});

/// Same recursion starting from a given discrete initial state u_h^0.
Trajectory step_solve_from(const ProblemSpec& problem, const Mesh1D& mesh,
                           const SchemeConfig& scheme, std::span<const double> initial,
                           const StepOptions& opts = {});

}  // namespace subdiff
