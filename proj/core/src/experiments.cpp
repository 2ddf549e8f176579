#include "subdiff/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "subdiff/error.hpp"
#include "subdiff/fem.hpp"
#include "subdiff/stepper.hpp"

namespace subdiff {

namespace {

// Runs tasks[0..n) on up to `threads` workers. The first exception is
// rethrown after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task) {
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        task(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

ProblemSpec instance(const ExperimentPlan& plan, double alpha, double final_time) {
    ProblemSpec p = plan.problem;
    p.alpha = alpha;
    p.final_time = final_time;
    return p;
}

std::vector<double> final_state(const ProblemSpec& p, int elements, int steps, Scheme scheme,
                                int quad_order) {
    const Mesh1D mesh(elements);
    const auto traj = step_solve(p, mesh, SchemeConfig::uniform(scheme, steps, p.final_time),
                                 StepOptions{quad_order});
    const auto u = traj.final_state();
    return {u.begin(), u.end()};
}

// Fine-in-time reference on a fixed mesh, extrapolated when requested.
std::vector<double> time_reference(const ProblemSpec& p, int elements, const ReferenceSpec& ref,
                                   Scheme scheme, int quad_order) {
    auto u = final_state(p, elements, ref.steps, scheme, quad_order);
    if (!ref.extrapolate) return u;
    const auto half = final_state(p, elements, ref.steps / 2, scheme, quad_order);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = 2.0 * u[i] - half[i];
    return u;
}

double spatial_error(int coarse, int fine, const std::vector<double>& u_coarse,
                     const std::vector<double>& u_fine) {
    const Mesh1D mc(coarse);
    const Mesh1D mf(fine);
    auto diff = prolong(mc, mf, u_coarse);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= u_fine[i];
    return l2_norm(mf, diff);
}

double temporal_error(int elements, const std::vector<double>& u, const std::vector<double>& ref) {
    std::vector<double> diff(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - ref[i];
    return l2_norm(Mesh1D(elements), diff);
}

ConvergenceReport make_report(const ExperimentPlan& plan,
                              const std::vector<std::vector<double>>& errors) {
    ConvergenceReport rep;
    rep.title = plan.title;
    rep.vary = plan.vary;
    rep.reference_mode = plan.reference.mode;
    rep.scheme = plan.scheme;
    rep.alphas = plan.alphas;
    rep.grid = plan.grid;
    const RateMode mode = rep.rate_mode();
    for (std::size_t a = 0; a < plan.alphas.size(); ++a) {
        rep.predicted.push_back(predicted_rate(plan, plan.alphas[a]));
        std::vector<std::optional<double>> rates;
        if (plan.grid.size() >= 2) rates = extract_rates(errors[a], plan.grid, mode);
        for (std::size_t g = 0; g < plan.grid.size(); ++g) {
            ReportRow row{plan.alphas[a], plan.grid[g], errors[a][g], std::nullopt};
            if (g > 0) row.rate = rates[g - 1];
            rep.rows.push_back(row);
        }
    }
    return rep;
}

int as_count(double g, const char* what) {
    const double r = std::round(g);
    if (std::abs(g - r) > 1e-9 || r < 1 || r > std::numeric_limits<int>::max()) {
        std::ostringstream os;
        os << what << " grid value " << g << " is not a positive integer";
        fail(ErrorKind::InvalidArgument, os.str());
    }
    return static_cast<int>(r);
}

}  // namespace

Coefficient cosine_coefficient() {
    Coefficient c;
    c.eval = [](double, double t) { return 2.0 + std::cos(t); };
    c.lambda = 3.0;
    c.lipschitz_t = 1.0;
    return c;
}

ProblemSpec preset_example_a(double alpha, double final_time) {
    ProblemSpec p;
    p.alpha = alpha;
    p.final_time = final_time;
    p.coeff = cosine_coefficient();
    p.u0 = [](double x) { return std::pow(x, -0.25); };
    p.source = SourceTerm::zero();
    p.singular_at_zero = true;
    p.beta = 0.25;
    return p;
}

ProblemSpec preset_example_b(double alpha, double final_time) {
    ProblemSpec p;
    p.alpha = alpha;
    p.final_time = final_time;
    p.coeff = cosine_coefficient();
    p.source = SourceTerm::separable([](double t) { return std::exp(t); },
                                     [](double x) { return x > 0.0 && x < 0.5 ? 2.0 : 1.0; });
    p.breakpoints = {0.5};
    return p;
}

ProblemSpec preset_problem(Preset preset, double alpha, double final_time) {
    return preset == Preset::ExampleA ? preset_example_a(alpha, final_time)
                                      : preset_example_b(alpha, final_time);
}

ExperimentPlan standard_plan(const StudyRequest& request) {
    ExperimentPlan plan;
    plan.problem = preset_problem(request.preset);
    plan.vary = request.vary;
    plan.scheme = request.scheme;
    plan.alphas = {0.25, 0.5, 0.75};
    const std::string example = request.preset == Preset::ExampleA ? "(a)" : "(b)";
    const std::string scheme(to_string(request.scheme));

    switch (request.vary) {
        case Vary::SpatialM:
            plan.grid = {10, 20, 40, 80, 160};
            plan.steps = 10000;
            plan.reference = {1280, 10000, ReferenceMode::FineSpace};
            if (request.fast) {
                plan.grid.pop_back();
                plan.steps = 2000;
                plan.reference.elements = 640;
            }
            plan.title = "spatial error e_s, example " + example + ", T = 1";
            break;
        case Vary::TemporalN:
            plan.grid = {100, 200, 400, 800, 1600};
            plan.elements = 100;
            plan.reference = {1280, 10000, ReferenceMode::FineTime};
            plan.title = "temporal error e_t, example " + example + ", " + scheme + ", T = 1";
            break;
        case Vary::FinalTimeDecay:
            if (request.decay == ReferenceMode::FineSpace) {
                plan.grid = {2, 3, 4, 5, 6, 7};
                plan.elements = request.fast ? 80 : 200;
                plan.steps = request.fast ? 2000 : 10000;
                plan.reference = {request.fast ? 640 : 1600, 10000, ReferenceMode::FineSpace};
                plan.title = "spatial error e_s at T = 10^-k, example " + example;
            } else {
                plan.grid = {3, 4, 5, 6, 7, 8};
                plan.alphas = {0.5, 0.8};
                // M stays at 1000 in fast mode: at alpha = 0.8 the exponent is
                // only reached once the spectrum extends past T^{-alpha}
                plan.elements = 1000;
                plan.steps = 5;
                plan.reference = {1280, request.fast ? 600 : 2000, ReferenceMode::FineTime};
                plan.title = "temporal error e_t at T = 10^-k, N = 5, example " + example + ", " +
                             scheme;
            }
            break;
    }
    return plan;
}

void ExperimentPlan::validate() const {
    require(!grid.empty(), ErrorKind::InvalidArgument, "experiment grid is empty");
    require(!alphas.empty(), ErrorKind::InvalidArgument, "experiment has no alpha values");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        require(grid[i + 1] > grid[i], ErrorKind::InvalidArgument,
                "experiment grid must be strictly increasing");
    }
    for (double a : alphas) {
        if (!(a > 0.0 && a < 1.0)) {
            std::ostringstream os;
            os << "alpha = " << a << " is outside the valid interval (0, 1)";
            fail(ErrorKind::InvalidArgument, os.str());
        }
    }
    require(final_time > 0.0, ErrorKind::InvalidArgument, "final_time must be positive");
    require(elements >= 2 && steps >= 1, ErrorKind::InvalidArgument,
            "fixed mesh/step counts must be positive");

    const auto check_fine_space = [&](double largest) {
        if (reference.elements < 8 * largest) {
            std::ostringstream os;
            os << "reference mesh M_ref = " << reference.elements
               << " must be at least 8x the largest M (" << largest << ")";
            fail(ErrorKind::InvalidArgument, os.str());
        }
    };
    const auto check_fine_time = [&](double largest) {
        require(!reference.extrapolate || reference.steps % 2 == 0, ErrorKind::InvalidArgument,
                "extrapolated reference needs an even N_ref");
        if (reference.steps < 6 * largest) {
            std::ostringstream os;
            os << "reference step count N_ref = " << reference.steps
               << " must be at least 6x the largest N (" << largest << ")";
            fail(ErrorKind::InvalidArgument, os.str());
        }
    };

    switch (vary) {
        case Vary::SpatialM:
            for (double g : grid) {
                const int m = as_count(g, "M");
                if (m < 2 || reference.elements % m != 0) {
                    std::ostringstream os;
                    os << "mesh M = " << m << " does not divide the reference mesh M_ref = "
                       << reference.elements;
                    fail(ErrorKind::InvalidArgument, os.str());
                }
            }
            check_fine_space(grid.back());
            break;
        case Vary::TemporalN:
            for (double g : grid) as_count(g, "N");
            check_fine_time(grid.back());
            break;
        case Vary::FinalTimeDecay:
            if (reference.mode == ReferenceMode::FineSpace) {
                require(reference.elements % elements == 0, ErrorKind::InvalidArgument,
                        "decay study: M must divide M_ref");
                check_fine_space(elements);
            } else {
                check_fine_time(steps);
            }
            break;
    }
}

double predicted_rate(const ExperimentPlan& plan, double alpha) {
    switch (plan.vary) {
        case Vary::SpatialM: return 2.0;
        case Vary::TemporalN: return 1.0;
        case Vary::FinalTimeDecay: {
            if (!plan.problem.beta) return std::nan("");
            const double beta = *plan.problem.beta;
            return plan.reference.mode == ReferenceMode::FineSpace ? (2.0 - beta) * alpha / 2.0
                                                                   : beta * alpha / 2.0;
        }
    }
    return std::nan("");
}

ConvergenceReport run_spatial_study(const ExperimentPlan& plan, const RunOptions& opts) {
    require(plan.vary == Vary::SpatialM, ErrorKind::InvalidArgument,
            "run_spatial_study needs a plan varying M");
    plan.validate();
    const std::size_t na = plan.alphas.size();
    const std::size_t ng = plan.grid.size();
    const std::size_t per_alpha = ng + 1;  // slot 0 is the reference

    std::vector<std::vector<double>> states(na * per_alpha);
    parallel_for(states.size(), opts.threads, [&](std::size_t task) {
        const std::size_t a = task / per_alpha;
        const std::size_t g = task % per_alpha;
        const auto p = instance(plan, plan.alphas[a], plan.final_time);
        const int m = g == 0 ? plan.reference.elements : as_count(plan.grid[g - 1], "M");
        states[task] = final_state(p, m, plan.steps, plan.scheme, plan.quad_order);
    });

    std::vector<std::vector<double>> errors(na, std::vector<double>(ng));
    for (std::size_t a = 0; a < na; ++a) {
        const auto& ref = states[a * per_alpha];
        for (std::size_t g = 0; g < ng; ++g) {
            errors[a][g] = spatial_error(as_count(plan.grid[g], "M"), plan.reference.elements,
                                         states[a * per_alpha + g + 1], ref);
        }
    }
    return make_report(plan, errors);
}

ConvergenceReport run_temporal_study(const ExperimentPlan& plan, const RunOptions& opts) {
    require(plan.vary == Vary::TemporalN, ErrorKind::InvalidArgument,
            "run_temporal_study needs a plan varying N");
    plan.validate();
    const std::size_t na = plan.alphas.size();
    const std::size_t ng = plan.grid.size();
    const std::size_t per_alpha = ng + 1;

    std::vector<std::vector<double>> states(na * per_alpha);
    parallel_for(states.size(), opts.threads, [&](std::size_t task) {
        const std::size_t a = task / per_alpha;
        const std::size_t g = task % per_alpha;
        const auto p = instance(plan, plan.alphas[a], plan.final_time);
        states[task] =
            g == 0 ? time_reference(p, plan.elements, plan.reference, plan.scheme, plan.quad_order)
                   : final_state(p, plan.elements, as_count(plan.grid[g - 1], "N"), plan.scheme,
                                 plan.quad_order);
    });

    std::vector<std::vector<double>> errors(na, std::vector<double>(ng));
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t g = 0; g < ng; ++g) {
            errors[a][g] =
                temporal_error(plan.elements, states[a * per_alpha + g + 1], states[a * per_alpha]);
        }
    }
    return make_report(plan, errors);
}

ConvergenceReport run_decay_study(const ExperimentPlan& plan, const RunOptions& opts) {
    require(plan.vary == Vary::FinalTimeDecay, ErrorKind::InvalidArgument,
            "run_decay_study needs a plan varying the final time");
    plan.validate();
    const std::size_t na = plan.alphas.size();
    const std::size_t ng = plan.grid.size();
    const bool fine_space = plan.reference.mode == ReferenceMode::FineSpace;

    // two solves per (alpha, k): index 2*cell for the run, 2*cell+1 for the reference
    std::vector<std::vector<double>> states(2 * na * ng);
    parallel_for(states.size(), opts.threads, [&](std::size_t task) {
        const std::size_t cell = task / 2;
        const bool is_ref = task % 2 == 1;
        const std::size_t a = cell / ng;
        const std::size_t g = cell % ng;
        const auto p = instance(plan, plan.alphas[a], std::pow(10.0, -plan.grid[g]));
        if (!is_ref) {
            states[task] = final_state(p, plan.elements, plan.steps, plan.scheme, plan.quad_order);
        } else if (fine_space) {
            states[task] = final_state(p, plan.reference.elements, plan.steps, plan.scheme,
                                       plan.quad_order);
        } else {
            states[task] =
                time_reference(p, plan.elements, plan.reference, plan.scheme, plan.quad_order);
        }
    });

    std::vector<std::vector<double>> errors(na, std::vector<double>(ng));
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t g = 0; g < ng; ++g) {
            const std::size_t cell = a * ng + g;
            const auto& u = states[2 * cell];
            const auto& ref = states[2 * cell + 1];
            errors[a][g] = fine_space
                               ? spatial_error(plan.elements, plan.reference.elements, u, ref)
                               : temporal_error(plan.elements, u, ref);
        }
    }
    return make_report(plan, errors);
}

ConvergenceReport run_study(const ExperimentPlan& plan, const RunOptions& opts) {
    switch (plan.vary) {
        case Vary::SpatialM: return run_spatial_study(plan, opts);
        case Vary::TemporalN: return run_temporal_study(plan, opts);
        case Vary::FinalTimeDecay: return run_decay_study(plan, opts);
    }
    fail(ErrorKind::InvalidArgument, "unknown study kind");
}

}  // namespace subdiff
