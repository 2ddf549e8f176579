#include "subdiff/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

#include "subdiff/error.hpp"

namespace subdiff {

namespace {

GaussRule build_gauss_legendre(int n) {
    GaussRule rule;
    if (n == 1) return GaussRule{{0.0}, {2.0}};
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

struct Piece {
    double a;
    double b;
    double value;
    double error;
    double l1;
    bool operator<(const Piece& o) const { return error < o.error; }
};

Piece evaluate_piece(const std::function<double(double)>& f, double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    double err = 0.0;
    double l1 = 0.0;
    const double v = GK::integrate(f, a, b, 0, 0.0, &err, &l1);
    // the depth-0 path reports the error on the reference interval [-1, 1]
    return {a, b, v, err * 0.5 * (b - a), l1};
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    require(n >= 1, ErrorKind::InvalidArgument, "gauss_legendre: n must be >= 1");
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return it->second;
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  const AdaptiveOptions& opts) {
    AdaptiveResult out;
    if (!(b > a)) return out;

    std::priority_queue<Piece> heap;
    double total = 0.0;
    double total_err = 0.0;
    double total_l1 = 0.0;
    auto push = [&](Piece p) {
        total += p.value;
        total_err += p.error;
        total_l1 += p.l1;
        heap.push(p);
    };

    double right = b;
    for (int level = 0; level < opts.grade_levels_left; ++level) {
        const double mid = a + 0.5 * (right - a);
        push(evaluate_piece(f, mid, right));
        right = mid;
    }
    push(evaluate_piece(f, a, right));

    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * total_l1); };

    while (total_err > target() && static_cast<int>(heap.size()) < opts.max_intervals) {
        Piece worst = heap.top();
        heap.pop();
        total -= worst.value;
        total_err -= worst.error;
        total_l1 -= worst.l1;
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // interval cannot be split further in floating point
            push(worst);
            break;
        }
        push(evaluate_piece(f, worst.a, mid));
        push(evaluate_piece(f, mid, worst.b));
    }

    // resum to avoid drift from the running add/subtract
    total = 0.0;
    total_err = 0.0;
    total_l1 = 0.0;
    out.intervals = static_cast<int>(heap.size());
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        total_l1 += heap.top().l1;
        heap.pop();
    }
    out.value = total;
    out.error = total_err;
    out.converged = std::isfinite(total) && total_err <= target();
    return out;
}

}  // namespace subdiff
