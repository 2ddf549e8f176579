#include "subdiff/contour.hpp"

#include <cmath>
#include <sstream>

#include "subdiff/error.hpp"
#include "subdiff/quadrature.hpp"

namespace subdiff {

void ContourConfig::validate() const {
    if (!(theta > 0.5 * std::numbers::pi && theta < std::numbers::pi)) {
        std::ostringstream os;
        os << "contour angle theta = " << theta << " must lie in (pi/2, pi)";
        fail(ErrorKind::InvalidArgument, os.str());
    }
    require(n_quad >= 16, ErrorKind::InvalidArgument, "contour n_quad must be >= 16");
    require(delta >= 0.0 && truncation >= 0.0, ErrorKind::InvalidArgument,
            "contour delta and truncation must be non-negative");
    require(panel_ratio > 1.0, ErrorKind::InvalidArgument, "panel_ratio must exceed 1");
}

double default_truncation(const ContourConfig& cfg, double t) {
    return std::log(1e16) / (-std::cos(cfg.theta) * t);
}

std::vector<ContourNode> sector_contour(const ContourConfig& cfg, double delta, double radius) {
    cfg.validate();
    require(delta > 0.0 && radius > delta, ErrorKind::InvalidArgument,
            "sector_contour: need 0 < delta < radius");
    using cplx = std::complex<double>;
    constexpr cplx I{0.0, 1.0};
    const cplx two_pi_i = 2.0 * std::numbers::pi * I;
    const GaussRule& rule = gauss_legendre(cfg.n_quad);

    std::vector<ContourNode> nodes;
    // lower ray: rho from radius down to delta, z = rho e^{-i theta}
    // upper ray: rho from delta up to radius, z = rho e^{+i theta}
    std::vector<double> edges{delta};
    while (edges.back() * cfg.panel_ratio < radius) edges.push_back(edges.back() * cfg.panel_ratio);
    edges.push_back(radius);

    const cplx up = std::polar(1.0, cfg.theta);
    const cplx down = std::conj(up);
    auto add_ray = [&](const cplx& dir, double sign) {
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const double a = edges[p];
            const double b = edges[p + 1];
            for (int q = 0; q < rule.size(); ++q) {
                const double rho = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[q];
                const double w = 0.5 * (b - a) * rule.weights[q];
                nodes.push_back({rho * dir, sign * w * dir / two_pi_i});
            }
        }
    };
    add_ray(down, -1.0);
    // arc: z = delta e^{i phi}, phi from -theta to theta, dz = i z dphi
    for (int q = 0; q < rule.size(); ++q) {
        const double phi = cfg.theta * rule.nodes[q];
        const double w = cfg.theta * rule.weights[q];
        const cplx z = std::polar(delta, phi);
        nodes.push_back({z, w * I * z / two_pi_i});
    }
    add_ray(up, 1.0);
    return nodes;
}

}  // namespace subdiff
