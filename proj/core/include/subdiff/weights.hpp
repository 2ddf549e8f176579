#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace subdiff {

enum class Scheme {
    BackwardEulerCQ,  // backward Euler convolution quadrature
    L1,               // piecewise-linear interpolation of u in the Caputo integral
};

std::string_view to_string(Scheme s) noexcept;

/// Uniform time grid t_n = n * tau on [0, T].
struct SchemeConfig {
    Scheme scheme = Scheme::BackwardEulerCQ;
    int steps = 1;
    double tau = 1.0;

    /// Throws InvalidArgument for N < 1 or T <= 0.
    static SchemeConfig uniform(Scheme scheme, int steps, double final_time);

    [[nodiscard]] double time(int n) const noexcept { return n * tau; }
    [[nodiscard]] double final_time() const noexcept { return steps * tau; }
};

/// Convolution weights b_0 .. b_N of the discrete fractional derivative
///   dbar^alpha phi^n = tau^{-alpha} sum_{j=0}^{n} b_j phi^{n-j}.
///
/// For backward Euler CQ these are the Taylor coefficients of (1 - xi)^alpha.
/// For L1 the table is written in the same convolution form for sequences
/// with phi^0 = 0 (the Caputo-shifted sequence u^n - u^0), which is how the
/// stepper uses it; b_j then carries the 1/Gamma(2 - alpha) factor.
struct WeightTable {
    Scheme scheme = Scheme::BackwardEulerCQ;
    double alpha = 0.5;
    std::vector<double> b;

    [[nodiscard]] int max_index() const noexcept { return static_cast<int>(b.size()) - 1; }
};

/// b_0 = 1, b_j = b_{j-1} (j - 1 - alpha) / j. Throws InvalidArgument for
/// alpha outside (0, 1) or N < 0.
WeightTable cq_weights(double alpha, int N);

/// b_0 = 1 / Gamma(2 - alpha), b_j = (a_j - a_{j-1}) / Gamma(2 - alpha) with
/// a_j = (j + 1)^{1-alpha} - j^{1-alpha}.
WeightTable l1_weights(double alpha, int N);

WeightTable make_weights(Scheme scheme, double alpha, int N);

/// tau^{-alpha} sum_{j=0}^{n} b_j phi^{n-j}; history holds phi^0 .. phi^n
/// (at least n + 1 entries).
std::vector<double> discrete_caputo_apply(const WeightTable& w, double tau,
                                          std::span<const std::vector<double>> history, int n);
double discrete_caputo_apply(const WeightTable& w, double tau, std::span<const double> history,
                             int n);

/// Caputo form: applies the table to the shifted sequence phi^k - phi^0.
std::vector<double> discrete_caputo_derivative(const WeightTable& w, double tau,
                                               std::span<const std::vector<double>> history,
                                               int n);
double discrete_caputo_derivative(const WeightTable& w, double tau,
                                  std::span<const double> history, int n);

}  // namespace subdiff
