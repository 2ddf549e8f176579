#pragma once

#include <functional>
#include <vector>

namespace subdiff {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    [[nodiscard]] int size() const noexcept { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule, n >= 1. Results are cached per n.
const GaussRule& gauss_legendre(int n);

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    int intervals = 0;
    bool converged = false;
};

struct AdaptiveOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    int max_intervals = 400;
    /// Pre-split [a, b] geometrically toward a (factor 1/2 per level) before
    /// adaptive refinement; used for integrable singularities at a.
    int grade_levels_left = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature: the sub-interval
/// with the largest error estimate is bisected until the total estimate
/// meets max(abs_tol, rel_tol * integral of |f|). Never evaluates f at a or b.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  const AdaptiveOptions& opts = {});

}  // namespace subdiff
