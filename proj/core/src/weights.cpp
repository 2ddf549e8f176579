#include "subdiff/weights.hpp"

#include <cmath>
#include <sstream>

#include "subdiff/error.hpp"

namespace subdiff {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << "fractional order alpha = " << alpha << " is outside (0, 1)";
        fail(ErrorKind::InvalidArgument, os.str());
    }
}

void check_index(const WeightTable& w, std::size_t history, int n) {
    if (n < 0 || n > w.max_index()) {
        std::ostringstream os;
        os << "step index " << n << " exceeds weight table length " << w.b.size();
        fail(ErrorKind::InvalidArgument, os.str());
    }
    require(history > static_cast<std::size_t>(n), ErrorKind::InvalidArgument,
            "history shorter than n + 1 entries");
}

// (j+1)^{1-alpha} - j^{1-alpha} without cancellation for large j
double l1_increment(int j, double alpha) {
    if (j == 0) return 1.0;
    const double c = 1.0 - alpha;
    const double jj = static_cast<double>(j);
    return std::pow(jj, c) * std::expm1(c * std::log1p(1.0 / jj));
}

}  // namespace

std::string_view to_string(Scheme s) noexcept {
    switch (s) {
        case Scheme::BackwardEulerCQ: return "BE";
        case Scheme::L1: return "L1";
    }
    return "?";
}

SchemeConfig SchemeConfig::uniform(Scheme scheme, int steps, double final_time) {
    require(steps >= 1, ErrorKind::InvalidArgument, "number of time steps must be >= 1");
    require(final_time > 0.0, ErrorKind::InvalidArgument, "final time must be positive");
    return {scheme, steps, final_time / steps};
}

WeightTable cq_weights(double alpha, int N) {
    check_alpha(alpha);
    require(N >= 0, ErrorKind::InvalidArgument, "weight table length must be >= 0");
    WeightTable w{Scheme::BackwardEulerCQ, alpha, std::vector<double>(N + 1)};
    w.b[0] = 1.0;
    for (int j = 1; j <= N; ++j) w.b[j] = w.b[j - 1] * (j - 1 - alpha) / j;
    return w;
}

WeightTable l1_weights(double alpha, int N) {
    check_alpha(alpha);
    require(N >= 0, ErrorKind::InvalidArgument, "weight table length must be >= 0");
    const double scale = 1.0 / std::tgamma(2.0 - alpha);
    WeightTable w{Scheme::L1, alpha, std::vector<double>(N + 1)};
    w.b[0] = scale;
    double prev = l1_increment(0, alpha);
    for (int j = 1; j <= N; ++j) {
        const double cur = l1_increment(j, alpha);
        w.b[j] = (cur - prev) * scale;
        prev = cur;
    }
    return w;
}

WeightTable make_weights(Scheme scheme, double alpha, int N) {
    return scheme == Scheme::L1 ? l1_weights(alpha, N) : cq_weights(alpha, N);
}

std::vector<double> discrete_caputo_apply(const WeightTable& w, double tau,
                                          std::span<const std::vector<double>> history, int n) {
    check_index(w, history.size(), n);
    std::vector<double> out(history[n].size(), 0.0);
    for (int j = 0; j <= n; ++j) {
        const auto& phi = history[n - j];
        require(phi.size() == out.size(), ErrorKind::InvalidArgument,
                "discrete_caputo_apply: inconsistent vector sizes");
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w.b[j] * phi[i];
    }
    const double scale = std::pow(tau, -w.alpha);
    for (double& v : out) v *= scale;
    return out;
}

double discrete_caputo_apply(const WeightTable& w, double tau, std::span<const double> history,
                             int n) {
    check_index(w, history.size(), n);
    double s = 0.0;
    for (int j = 0; j <= n; ++j) s += w.b[j] * history[n - j];
    return std::pow(tau, -w.alpha) * s;
}

std::vector<double> discrete_caputo_derivative(const WeightTable& w, double tau,
                                               std::span<const std::vector<double>> history,
                                               int n) {
    check_index(w, history.size(), n);
    std::vector<std::vector<double>> shifted(history.begin(), history.begin() + n + 1);
    for (auto& phi : shifted) {
        for (std::size_t i = 0; i < phi.size(); ++i) phi[i] -= history[0][i];
    }
    return discrete_caputo_apply(w, tau, shifted, n);
}

double discrete_caputo_derivative(const WeightTable& w, double tau,
                                  std::span<const double> history, int n) {
    check_index(w, history.size(), n);
    std::vector<double> shifted(history.begin(), history.begin() + n + 1);
    for (double& v : shifted) v -= history[0];
    return discrete_caputo_apply(w, tau, std::span<const double>(shifted), n);
}

}  // namespace subdiff
