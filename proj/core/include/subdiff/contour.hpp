#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace subdiff {

/// Sectorial contour made of the arc |z| = delta, |arg z| <= theta, and the
/// two rays z = rho e^{+-i theta}, rho in [delta, R], oriented with
/// increasing imaginary part.
struct ContourConfig {
    double theta = 0.75 * std::numbers::pi;
    /// Arc radius; 0 selects delta = 1/t for the time being evaluated.
    double delta = 0.0;
    /// Gauss-Legendre nodes on the arc and on every ray panel.
    int n_quad = 32;
    /// Ray length R; 0 selects the radius where |e^{zt}| drops below 1e-16.
    double truncation = 0.0;
    /// Ray panels are [delta q^k, delta q^{k+1}] with this ratio q.
    double panel_ratio = 2.0;

    /// Throws InvalidArgument unless pi/2 < theta < pi and n_quad >= 16.
    void validate() const;
};

/// Quadrature node for (1 / 2 pi i) \int g(z) dz ~ sum_k weight_k g(z_k).
struct ContourNode {
    std::complex<double> z;
    std::complex<double> weight;
};

/// Nodes for the contour with arc radius delta and ray length radius.
/// Conjugate-symmetric, so real-valued integrands give real sums.
std::vector<ContourNode> sector_contour(const ContourConfig& cfg, double delta, double radius);

/// Ray length at which |e^{z t}| = 1e-16 on rays of angle theta.
double default_truncation(const ContourConfig& cfg, double t);

}  // namespace subdiff
