#pragma once

#include <span>
#include <vector>

#include "subdiff/contour.hpp"
#include "subdiff/mesh.hpp"
#include "subdiff/problem.hpp"

namespace subdiff {

// Reference evaluators for the frozen-coefficient problem. Operators act on
// interior-node vectors; the resolvent (z^alpha + A_h)^{-1} is realised as
// (z^alpha Mass + Stiff)^{-1} Mass. All of them accept alpha in (0, 1].

/// F_h(t; t0) v = (1/2 pi i) \int e^{zt} z^{alpha-1} (z^alpha + A_h(t0))^{-1} v dz.
/// Throws ContourAccuracy if the imaginary part of the sum exceeds 1e-8
/// times the larger of ||v|| and the real part.
std::vector<double> eval_Fh(const Mesh1D& mesh, const Coefficient& coeff, double alpha, double t0,
                            double t, std::span<const double> v, const ContourConfig& cfg = {});

/// E_h(t; t0) v = (1/2 pi i) \int e^{zt} (z^alpha + A_h(t0))^{-1} v dz.
std::vector<double> eval_Eh(const Mesh1D& mesh, const Coefficient& coeff, double alpha, double t0,
                            double t, std::span<const double> v, const ContourConfig& cfg = {});

struct ConvolutionOptions {
    int panels = 16;           // geometric panels, graded toward s = t
    int nodes_per_panel = 8;   // Gauss-Legendre nodes per panel
};

/// \int_0^t E_h(t - s; t0) P_h f(s) ds by composite Gauss quadrature in s.
/// The substitution t - s = t y^{1/alpha} removes the (t-s)^{alpha-1}
/// singularity of the kernel.
std::vector<double> eval_Eh_convolution(const Mesh1D& mesh, const Coefficient& coeff, double alpha,
                                        double t0, const SourceTerm& f, double t,
                                        const ContourConfig& cfg = {},
                                        const ConvolutionOptions& opts = {});

struct DiscreteOperatorAction {
    std::vector<double> F;  // F^n_{tau} v
    std::vector<double> E;  // E^n_{tau} v
};

/// Discrete solution operators of backward Euler CQ with the coefficient
/// frozen at t_m, integrated over the contour truncated at |Im z| = pi/tau,
/// with kernel K(z) = (1 - e^{-z tau}) / tau:
///   F^n v = (1/2 pi i) \int e^{z t_n} e^{-z tau} K^{alpha-1} (K^alpha + A_h)^{-1} v dz, n >= 1,
///   F^0 v = v,
///   E^n v = (1/2 pi i) \int e^{z t_n} (K^alpha + A_h)^{-1} v dz.
/// With these, the frozen-coefficient BE-CQ solution is
///   u^m = F^m u^0 + tau sum_{k=1}^m E^{m-k} P_h f(t_k).
DiscreteOperatorAction eval_discrete_operators(const Mesh1D& mesh, const Coefficient& coeff,
                                               double alpha, double tau, double t_m, int n,
                                               std::span<const double> v,
                                               const ContourConfig& cfg = {});

/// E_alpha(-x) from its power series, summed in extended precision.
double mittag_leffler_series(double alpha, double x);

/// E_alpha(-lambda t^alpha) by contour quadrature of e^{zt} z^{alpha-1} / (z^alpha + lambda).
double scalar_fode_contour(double alpha, double lambda, double t, const ContourConfig& cfg = {});

/// Solution of the scalar problem d^alpha u + lambda u = 0, u(0) = 1, at t.
/// Uses the contour value; where the series converges quickly
/// (lambda t^alpha <= 2) both paths are computed and a disagreement above
/// 1e-8 throws OracleMismatch.
double scalar_fode_reference(double alpha, double lambda, double t, const ContourConfig& cfg = {});

/// Sampled constants of the backward Euler kernel K(z) = (1 - e^{-z tau})/tau
/// on the truncated contour (arc radius delta, |Im z| <= pi/tau):
///   lower <= |K(z)| / |z| <= upper,
///   |K(z) - z| <= first_order tau |z|^2,
///   |K(z)^alpha - z^alpha| <= fractional tau |z|^{1+alpha},
/// and the largest |arg K(z)|.
struct KernelBounds {
    double lower = 0.0;
    double upper = 0.0;
    double first_order = 0.0;
    double fractional = 0.0;
    double max_arg = 0.0;
};

KernelBounds sample_kernel_bounds(double alpha, double tau, double delta, int samples_per_ray,
                                  double theta = 0.75 * 3.141592653589793);

}  // namespace subdiff
