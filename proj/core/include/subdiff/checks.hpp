#pragma once

#include <string>
#include <vector>

#include "subdiff/problem.hpp"

namespace subdiff {

/// Outcome of one self-consistency check. `value` is the measured quantity
/// (a residual, an order or a growth factor) and `threshold` the bound it
/// was held to.
struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

/// Frozen-coefficient backward Euler CQ stepping against
///   u^m = F^m u^0 + tau sum_{k=1}^m E^{m-k} P_h f(t_k)
/// evaluated by contour quadrature. Data: u0 = x^{-1/4},
/// f = e^t (1 + indicator of (0, 1/2)), a = 2 + cos(T) frozen.
/// value = relative L2 residual at every time level (max).
CheckResult check_discrete_representation(double alpha, int elements, int steps, double tol);

/// Same data without the source: f = 0 and m = N only. Cheaper; used by
/// the command-line self-check.
CheckResult check_homogeneous_representation(double alpha, int elements, int steps, double tol);

/// E_alpha(-lambda t^alpha) by contour and by power series on a grid of
/// (lambda, t) with lambda t^alpha <= 2. value = max absolute difference.
CheckResult check_scalar_dual_path(double alpha, double tol);

/// Sampled constants of the backward Euler kernel at tau and tau / 2. Passes
/// when the lower bound is positive, arg K stays inside (-pi, pi), and each
/// constant moves by less than `max_drift` (relative) under halving.
/// value = largest relative drift.
CheckResult check_kernel_bounds(double alpha, double tau, double max_drift = 0.1);

/// Frozen-coefficient BE-CQ at T = 1 against the semidiscrete contour
/// solution F_h u_h^0 + int E_h P_h f ds for N = 128 .. 2048 on the
/// given mesh. value = smallest observed order.
CheckResult check_semidiscrete_order(double alpha, int elements, double min_order);

/// max over t != s on a uniform grid of [0, 1] (`samples` points) and over
/// the nodal basis v = e_i of
///   ||(I - A_h(t)^{-1} A_h(s)) v|| / (|t - s| ||v||),
/// a perturbation bound that should not grow as the mesh is refined.
double max_perturbation_ratio(const Coefficient& coeff, int elements, int samples);

}  // namespace subdiff
