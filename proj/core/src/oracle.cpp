#include "subdiff/oracle.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "subdiff/error.hpp"
#include "subdiff/fem.hpp"
#include "subdiff/quadrature.hpp"
#include "subdiff/tridiag.hpp"

namespace subdiff {

namespace {

using cplx = std::complex<double>;

// e^w - 1 without cancellation for small |w|
cplx expm1(cplx w) {
    const double a = w.real();
    const double b = w.imag();
    const double half_sin = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * half_sin * half_sin, std::exp(a) * std::sin(b)};
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        std::ostringstream os;
        os << "oracle: alpha = " << alpha << " is outside (0, 1]";
        fail(ErrorKind::InvalidArgument, os.str());
    }
}

struct FrozenOperator {
    TriDiagMatrix mass;
    TriDiagMatrix stiff;
};

FrozenOperator freeze(const Mesh1D& mesh, const Coefficient& coeff, double t0) {
    return {assemble_mass(mesh), assemble_stiffness(mesh, coeff, t0)};
}

// sum_k factor(z_k) (shift(z_k) M + S)^{-1} M v over the contour nodes.
std::vector<double> contour_apply(const Mesh1D& mesh, const FrozenOperator& op,
                                  const std::vector<ContourNode>& nodes,
                                  std::span<const double> v,
                                  const std::function<cplx(cplx)>& shift,
                                  const std::function<cplx(cplx)>& factor, const char* who) {
    const std::size_t n = v.size();
    require(n == static_cast<std::size_t>(mesh.interior()), ErrorKind::InvalidArgument,
            std::string(who) + ": vector dimension does not match the mesh");
    std::vector<double> mv(n);
    op.mass.multiply<double>(v, mv);

    std::vector<cplx> acc(n, cplx{});
    std::vector<cplx> x(n), scratch(n);
    for (const auto& node : nodes) {
        const cplx s = shift(node.z);
        const cplx c = factor(node.z) * node.weight;
        if (c == cplx{}) continue;
        const auto system = combine<cplx, double>(s, op.mass, cplx{1.0}, op.stiff);
        for (std::size_t i = 0; i < n; ++i) x[i] = mv[i];
        solve_in_place<cplx>(system, x, scratch);
        for (std::size_t i = 0; i < n; ++i) acc[i] += c * x[i];
    }

    std::vector<double> re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
        re[i] = acc[i].real();
        im[i] = acc[i].imag();
    }
    // E_h(t) grows like t^{alpha-1} as t -> 0, so the scale is the larger of
    // ||v|| and the result itself
    const double scale = std::max(l2_norm(mesh, v), l2_norm(mesh, re));
    const double imnorm = l2_norm(mesh, im);
    if (!(imnorm <= 1e-8 * scale) && scale > 0.0) {
        std::ostringstream os;
        os << who << ": imaginary part " << imnorm << " exceeds 1e-8 * " << scale
           << "; increase n_quad or the truncation radius";
        fail(ErrorKind::ContourAccuracy, os.str());
    }
    for (double r : re) {
        if (!std::isfinite(r)) fail(ErrorKind::ContourAccuracy, std::string(who) + ": non-finite result");
    }
    return re;
}

std::vector<ContourNode> continuous_contour(const ContourConfig& cfg, double t) {
    cfg.validate();
    require(t > 0.0, ErrorKind::InvalidArgument, "contour evaluation requires t > 0");
    const double delta = cfg.delta > 0.0 ? cfg.delta : 1.0 / t;
    double radius = cfg.truncation > 0.0 ? cfg.truncation : default_truncation(cfg, t);
    if (radius <= delta) radius = 2.0 * delta;
    return sector_contour(cfg, delta, radius);
}

}  // namespace

std::vector<double> eval_Fh(const Mesh1D& mesh, const Coefficient& coeff, double alpha, double t0,
                            double t, std::span<const double> v, const ContourConfig& cfg) {
    check_alpha(alpha);
    const auto op = freeze(mesh, coeff, t0);
    const auto nodes = continuous_contour(cfg, t);
    return contour_apply(
        mesh, op, nodes, v, [alpha](cplx z) { return std::pow(z, alpha); },
        [alpha, t](cplx z) { return std::exp(z * t) * std::pow(z, alpha - 1.0); }, "eval_Fh");
}

std::vector<double> eval_Eh(const Mesh1D& mesh, const Coefficient& coeff, double alpha, double t0,
                            double t, std::span<const double> v, const ContourConfig& cfg) {
    check_alpha(alpha);
    const auto op = freeze(mesh, coeff, t0);
    const auto nodes = continuous_contour(cfg, t);
    return contour_apply(
        mesh, op, nodes, v, [alpha](cplx z) { return std::pow(z, alpha); },
        [t](cplx z) { return std::exp(z * t); }, "eval_Eh");
}

std::vector<double> eval_Eh_convolution(const Mesh1D& mesh, const Coefficient& coeff, double alpha,
                                        double t0, const SourceTerm& f, double t,
                                        const ContourConfig& cfg,
                                        const ConvolutionOptions& opts) {
    check_alpha(alpha);
    require(t > 0.0, ErrorKind::InvalidArgument, "eval_Eh_convolution requires t > 0");
    require(opts.panels >= 1 && opts.nodes_per_panel >= 1, ErrorKind::InvalidArgument,
            "eval_Eh_convolution: invalid quadrature options");
    std::vector<double> out(mesh.interior(), 0.0);
    if (f.is_zero()) return out;

    std::vector<double> profile;
    if (f.is_separable()) profile = l2_project(mesh, f.profile());

    const GaussRule& rule = gauss_legendre(opts.nodes_per_panel);
    // y-panels [0, 2^{-P+1}], [2^{-P+1}, 2^{-P+2}], ..., [1/2, 1]
    std::vector<double> edges{0.0};
    for (int p = opts.panels - 1; p >= 0; --p) edges.push_back(std::ldexp(1.0, -p));

    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p];
        const double b = edges[p + 1];
        for (int q = 0; q < rule.size(); ++q) {
            const double y = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[q];
            const double wy = 0.5 * (b - a) * rule.weights[q];
            const double r = t * std::pow(y, 1.0 / alpha);  // r = t - s
            const double jac = (t / alpha) * std::pow(y, 1.0 / alpha - 1.0);
            if (!(r > 0.0)) continue;
            const double s = t - r;
            std::vector<double> phf;
            if (f.is_separable()) {
                phf = profile;
                const double g = f.time_factor(s);
                for (double& val : phf) val *= g;
            } else {
                phf = l2_project(mesh, f.at(s));
            }
            const auto e = eval_Eh(mesh, coeff, alpha, t0, r, phf, cfg);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += wy * jac * e[i];
        }
    }
    return out;
}

DiscreteOperatorAction eval_discrete_operators(const Mesh1D& mesh, const Coefficient& coeff,
                                               double alpha, double tau, double t_m, int n,
                                               std::span<const double> v,
                                               const ContourConfig& cfg) {
    check_alpha(alpha);
    require(tau > 0.0 && n >= 0, ErrorKind::InvalidArgument,
            "eval_discrete_operators: need tau > 0 and n >= 0");
    cfg.validate();
    const auto op = freeze(mesh, coeff, t_m);
    const double tn = n * tau;
    const double delta = cfg.delta > 0.0 ? cfg.delta : 1.0 / std::max(tn, tau);
    // |Im z| <= pi / tau on the rays
    const double radius = std::numbers::pi / (tau * std::sin(cfg.theta));
    require(radius > delta, ErrorKind::InvalidArgument,
            "eval_discrete_operators: arc radius exceeds the truncated contour");
    const auto nodes = sector_contour(cfg, delta, radius);

    auto kernel = [tau](cplx z) { return -expm1(-z * tau) / tau; };
    auto shift = [alpha, kernel](cplx z) { return std::pow(kernel(z), alpha); };

    DiscreteOperatorAction out;
    if (n == 0) {
        out.F.assign(v.begin(), v.end());
    } else {
        out.F = contour_apply(
            mesh, op, nodes, v, shift,
            [=](cplx z) {
                return std::exp(z * (tn - tau)) * std::pow(kernel(z), alpha - 1.0);
            },
            "eval_discrete_operators(F)");
    }
    out.E = contour_apply(
        mesh, op, nodes, v, shift, [tn](cplx z) { return std::exp(z * tn); },
        "eval_discrete_operators(E)");
    return out;
}

double mittag_leffler_series(double alpha, double x) {
    check_alpha(alpha);
    if (x == 0.0) return 1.0;
    // sum_k (-x)^k / Gamma(1 + alpha k)
    const long double log_abs = std::log(std::abs(static_cast<long double>(x)));
    long double sum = 0.0L;
    for (int k = 0; k < 4000; ++k) {
        const long double mag =
            std::exp(k * log_abs - std::lgamma(1.0L + alpha * static_cast<long double>(k)));
        const bool negative = x > 0.0 && k % 2 == 1;
        sum += negative ? -mag : mag;
        if (k > 10 && mag < 1e-22L * std::max(1.0L, std::abs(sum))) break;
    }
    return static_cast<double>(sum);
}

double scalar_fode_contour(double alpha, double lambda, double t, const ContourConfig& cfg) {
    check_alpha(alpha);
    require(lambda > 0.0 && t > 0.0, ErrorKind::InvalidArgument,
            "scalar_fode_contour: need lambda > 0 and t > 0");
    const auto nodes = continuous_contour(cfg, t);
    cplx acc{};
    for (const auto& node : nodes) {
        const cplx za = std::pow(node.z, alpha);
        acc += node.weight * std::exp(node.z * t) * za / (node.z * (za + lambda));
    }
    if (std::abs(acc.imag()) > 1e-8 * std::max(1.0, std::abs(acc.real()))) {
        std::ostringstream os;
        os << "scalar_fode_contour: imaginary part " << acc.imag() << " too large";
        fail(ErrorKind::ContourAccuracy, os.str());
    }
    return acc.real();
}

double scalar_fode_reference(double alpha, double lambda, double t, const ContourConfig& cfg) {
    const double contour = scalar_fode_contour(alpha, lambda, t, cfg);
    const double x = lambda * std::pow(t, alpha);
    if (x <= 2.0) {
        const double series = mittag_leffler_series(alpha, x);
        if (std::abs(series - contour) > 1e-8) {
            std::ostringstream os;
            os.precision(17);
            os << "scalar reference mismatch at alpha=" << alpha << ", lambda=" << lambda
               << ", t=" << t << ": contour " << contour << " vs series " << series;
            fail(ErrorKind::OracleMismatch, os.str());
        }
    }
    return contour;
}

KernelBounds sample_kernel_bounds(double alpha, double tau, double delta, int samples_per_ray,
                                  double theta) {
    check_alpha(alpha);
    require(tau > 0.0 && delta > 0.0 && samples_per_ray >= 2, ErrorKind::InvalidArgument,
            "sample_kernel_bounds: invalid arguments");
    const double radius = std::numbers::pi / (tau * std::sin(theta));
    require(radius > delta, ErrorKind::InvalidArgument,
            "sample_kernel_bounds: delta exceeds the truncated contour");

    KernelBounds kb;
    kb.lower = std::numeric_limits<double>::infinity();
    auto visit = [&](cplx z) {
        const cplx k = -expm1(-z * tau) / tau;
        const double az = std::abs(z);
        const double ratio = std::abs(k) / az;
        kb.lower = std::min(kb.lower, ratio);
        kb.upper = std::max(kb.upper, ratio);
        kb.first_order = std::max(kb.first_order, std::abs(k - z) / (tau * az * az));
        kb.fractional = std::max(kb.fractional, std::abs(std::pow(k, alpha) - std::pow(z, alpha)) /
                                                    (tau * std::pow(az, 1.0 + alpha)));
        kb.max_arg = std::max(kb.max_arg, std::abs(std::arg(k)));
    };
    const double log_ratio = std::log(radius / delta);
    for (int i = 0; i < samples_per_ray; ++i) {
        const double rho = delta * std::exp(log_ratio * i / (samples_per_ray - 1));
        visit(std::polar(rho, theta));
        visit(std::polar(rho, -theta));
    }
    for (int i = 0; i < samples_per_ray; ++i) {
        visit(std::polar(delta, -theta + 2.0 * theta * i / (samples_per_ray - 1)));
    }
    return kb;
}

}  // namespace subdiff
