#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "subdiff/experiments.hpp"
#include "subdiff/fem.hpp"
#include "subdiff/oracle.hpp"
#include "subdiff/stepper.hpp"

using namespace subdiff;

namespace {

// Full time stepping; dominated by the O(N^2 M) history sum.
void bm_step_solve(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const int N = static_cast<int>(state.range(1));
    const auto problem = preset_example_a(0.5, 1.0);
    const Mesh1D mesh(M);
    const auto cfg = SchemeConfig::uniform(Scheme::BackwardEulerCQ, N, 1.0);
    for (auto _ : state) {
        auto traj = step_solve(problem, mesh, cfg);
        benchmark::DoNotOptimize(traj.final_state().data());
    }
    state.counters["history_terms"] = benchmark::Counter(
        0.5 * N * (N + 1.0) * (M - 1), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(bm_step_solve)->Args({100, 1000})->Args({100, 4000})->Args({1280, 1000})
    ->Unit(benchmark::kMillisecond);

void bm_thomas_real(benchmark::State& state) {
    const Mesh1D mesh(static_cast<int>(state.range(0)));
    const auto A = combine(10.0, assemble_mass(mesh), 1.0,
                           assemble_stiffness(mesh, cosine_coefficient(), 0.0));
    std::vector<double> rhs(A.size(), 1.0), x(A.size()), scratch(A.size());
    for (auto _ : state) {
        x = rhs;
        solve_in_place<double>(A, x, scratch);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(A.size()));
}
BENCHMARK(bm_thomas_real)->Arg(100)->Arg(1280)->Arg(10000);

void bm_thomas_complex(benchmark::State& state) {
    using C = std::complex<double>;
    const Mesh1D mesh(static_cast<int>(state.range(0)));
    const auto A = combine(C(-3.0, 4.0), assemble_mass(mesh), C(1.0),
                           assemble_stiffness(mesh, cosine_coefficient(), 0.0));
    std::vector<C> rhs(A.size(), 1.0), x(A.size()), scratch(A.size());
    for (auto _ : state) {
        x = rhs;
        solve_in_place<C>(A, x, scratch);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(A.size()));
}
BENCHMARK(bm_thomas_complex)->Arg(100)->Arg(1280);

void bm_contour_Fh(benchmark::State& state) {
    const Mesh1D mesh(static_cast<int>(state.range(0)));
    const auto v = interpolate(mesh, [](double x) { return x * (1.0 - x); });
    const auto coeff = cosine_coefficient();
    for (auto _ : state) {
        auto f = eval_Fh(mesh, coeff, 0.5, 0.0, 0.5, v);
        benchmark::DoNotOptimize(f.data());
    }
}
BENCHMARK(bm_contour_Fh)->Arg(16)->Arg(256)->Unit(benchmark::kMicrosecond);

void bm_scalar_contour(benchmark::State& state) {
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(scalar_fode_contour(0.5, 2.0, t));
    }
}
BENCHMARK(bm_scalar_contour);

}  // namespace

BENCHMARK_MAIN();
