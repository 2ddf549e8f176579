#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace subdiff {

using SpaceFn = std::function<double(double)>;
using SpaceTimeFn = std::function<double(double, double)>;

/// Scalar diffusion coefficient a(x, t) with lambda^{-1} <= a <= lambda.
struct Coefficient {
    SpaceTimeFn eval;
    double lambda = 1.0;
    /// Bound on |da/dt|. Recorded for tests; assembly never enforces it.
    double lipschitz_t = 0.0;

    [[nodiscard]] double operator()(double x, double t) const { return eval(x, t); }

    /// a(x, t) = value, with lambda = max(value, 1/value).
    static Coefficient constant(double value);
};

/// Right-hand side f(x, t). A product form f = g(t) p(x) may be declared so
/// the spatial load is integrated once instead of at every time level.
class SourceTerm {
public:
    SourceTerm() = default;

    static SourceTerm zero() { return {}; }
    static SourceTerm general(SpaceTimeFn f);
    static SourceTerm separable(std::function<double(double)> time_factor, SpaceFn profile);

    [[nodiscard]] bool is_zero() const noexcept { return !general_ && !profile_; }
    [[nodiscard]] bool is_separable() const noexcept { return static_cast<bool>(profile_); }

    [[nodiscard]] double operator()(double x, double t) const;
    [[nodiscard]] double time_factor(double t) const { return time_factor_(t); }
    [[nodiscard]] const SpaceFn& profile() const noexcept { return profile_; }
    /// Spatial slice x -> f(x, t).
    [[nodiscard]] SpaceFn at(double t) const;

private:
    SpaceTimeFn general_;
    std::function<double(double)> time_factor_;
    SpaceFn profile_;
};

/// Continuous problem on (0, 1) x (0, T]:
///   Caputo d^alpha u - div(a grad u) = f,  u = 0 on the boundary,  u(0) = u0.
struct ProblemSpec {
    double alpha = 0.5;
    double final_time = 1.0;
    Coefficient coeff = Coefficient::constant(1.0);
    SpaceFn u0;  // empty means u0 = 0
    SourceTerm source;
    /// Points where u0 or f is not smooth; elements are split there
    /// before quadrature.
    std::vector<double> breakpoints;
    /// u0 has an integrable singularity at x = 0.
    bool singular_at_zero = false;
    /// Sobolev index of u0, used only for predicted decay exponents.
    std::optional<double> beta;

    /// Throws InvalidArgument when alpha is outside (0, 1), T <= 0, the
    /// coefficient is missing, or a breakpoint lies outside [0, 1].
    void validate() const;
};

}  // namespace subdiff
