#pragma once

#include <vector>

#include "subdiff/problem.hpp"
#include "subdiff/report.hpp"
#include "subdiff/weights.hpp"

namespace subdiff {

/// a(x, t) = 2 + cos t, lambda = 3, |da/dt| <= 1.
Coefficient cosine_coefficient();

/// u0 = x^{-1/4}, f = 0, a = 2 + cos t (u0 in H^{1/4 - eps}, beta = 1/4).
ProblemSpec preset_example_a(double alpha = 0.5, double final_time = 1.0);

/// u0 = 0, f = e^t (1 + indicator of (0, 1/2)), a = 2 + cos t.
ProblemSpec preset_example_b(double alpha = 0.5, double final_time = 1.0);

enum class Preset { ExampleA, ExampleB };

ProblemSpec preset_problem(Preset preset, double alpha = 0.5, double final_time = 1.0);

struct ReferenceSpec {
    int elements = 1280;  // M_ref, used by FineSpace
    int steps = 10000;    // N_ref, used by FineTime
    ReferenceMode mode = ReferenceMode::FineSpace;
    /// FineTime only: use 2 u^{N_ref} - u^{N_ref/2} in place of u^{N_ref}.
    /// Both schemes are first order, so this removes the leading O(tau_ref)
    /// term that otherwise bends the observed rates at the finest N.
    bool extrapolate = true;
};

/// A convergence study. Per run the problem's alpha and final time are
/// replaced by the entries of `alphas` and by `final_time` (or by 10^{-k}
/// for decay studies).
///
///  SpatialM:       grid = M values, fixed `steps`; error against M_ref.
///  TemporalN:      grid = N values, fixed `elements`; error against N_ref.
///  FinalTimeDecay: grid = k values with T = 10^{-k}; fixed `elements` and
///                  `steps`; reference per `reference.mode`.
struct ExperimentPlan {
    ProblemSpec problem;
    Vary vary = Vary::SpatialM;
    std::vector<double> grid;
    std::vector<double> alphas;
    Scheme scheme = Scheme::BackwardEulerCQ;
    int elements = 100;
    int steps = 10000;
    double final_time = 1.0;
    ReferenceSpec reference;
    int quad_order = 2;
    std::string title;

    /// Throws InvalidArgument: empty or non-increasing grid, non-nested
    /// meshes, a reference coarser than required (M_ref >= 8 max M,
    /// N_ref >= 6 max N), or alphas outside (0, 1).
    void validate() const;
};

struct RunOptions {
    int threads = 1;  // independent solves run concurrently; output order is fixed
};

ConvergenceReport run_spatial_study(const ExperimentPlan& plan, const RunOptions& opts = {});
ConvergenceReport run_temporal_study(const ExperimentPlan& plan, const RunOptions& opts = {});
ConvergenceReport run_decay_study(const ExperimentPlan& plan, const RunOptions& opts = {});

/// Selects one of the standard study layouts.
struct StudyRequest {
    Preset preset = Preset::ExampleA;
    Vary vary = Vary::SpatialM;
    Scheme scheme = Scheme::BackwardEulerCQ;
    /// FinalTimeDecay only: FineSpace measures e_s, FineTime measures e_t.
    ReferenceMode decay = ReferenceMode::FineSpace;
    /// Cheaper references for smoke runs (N = 2000, M_ref = 640).
    bool fast = false;
};

/// Standard layouts, T = 1 unless varied:
///   SpatialM   M in {10..160}, N = 10000, M_ref = 1280, alpha in {1/4, 1/2, 3/4}
///   TemporalN  N in {100..1600}, M = 100, N_ref = 10000 (extrapolated)
///   decay e_s  k in {2..7}, M = 200, N = 10000, M_ref = 1600
///   decay e_t  k in {3..8}, N = 5, M = 1000, N_ref = 2000 (extrapolated),
///              alpha in {0.5, 0.8}
/// Fast mode caps spatial grids at M = 80 (M_ref = 640, N = 2000) and uses
/// N_ref = 600 for the e_t decay study.
ExperimentPlan standard_plan(const StudyRequest& request);

/// Dispatches on plan.vary.
ConvergenceReport run_study(const ExperimentPlan& plan, const RunOptions& opts = {});

/// Predicted exponent for one alpha: 2 (space), 1 (time), (2 - beta) alpha / 2
/// (spatial decay) or beta alpha / 2 (temporal decay); NaN when beta is
/// unknown.
double predicted_rate(const ExperimentPlan& plan, double alpha);

}  // namespace subdiff
