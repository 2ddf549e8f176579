#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subdiff/experiments.hpp"
#include "subdiff/problem.hpp"
#include "subdiff/weights.hpp"

namespace subdiff::cli {

/// `problem:` section. With a preset only alpha and final_time may be set;
/// otherwise coefficient, initial and source are expressions in x and t
/// (see subdiff::Expression).
struct ProblemConfig {
    std::optional<Preset> preset;
    double alpha = 0.5;
    double final_time = 1.0;
    std::string coefficient = "1";
    std::optional<double> lambda;  // sampled from the coefficient when absent
    std::string initial = "0";
    std::string source = "0";
    std::vector<double> breakpoints;
    std::optional<double> beta;

    friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

/// `discretization:` section, used by `solve` and as the scheme default of
/// `convergence`.
struct DiscretizationConfig {
    int elements = 100;
    int steps = 1000;
    Scheme scheme = Scheme::BackwardEulerCQ;
    int quad_order = 2;

    friend bool operator==(const DiscretizationConfig&, const DiscretizationConfig&) = default;
};

/// `output:` section of `solve`: number of equally spaced snapshot levels,
/// always including t = 0 and t = T when >= 2.
struct OutputConfig {
    int snapshots = 5;

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

/// `study:` section of `convergence`. Absent fields fall back to the
/// standard layout for `vary`.
struct StudyConfig {
    Vary vary = Vary::SpatialM;
    ReferenceMode decay = ReferenceMode::FineSpace;
    std::optional<std::vector<double>> grid;
    std::optional<std::vector<double>> alphas;
    std::optional<int> elements;
    std::optional<int> steps;
    std::optional<int> reference_elements;
    std::optional<int> reference_steps;
    std::optional<bool> extrapolate;

    friend bool operator==(const StudyConfig&, const StudyConfig&) = default;
};

struct RunConfig {
    ProblemConfig problem;
    DiscretizationConfig discretization;
    OutputConfig output;
    std::optional<StudyConfig> study;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses YAML text. Unknown keys, wrong types and out-of-range values throw
/// Error(ErrorKind::Config) with "<source>:<line>:<column>: " prefixed.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");

/// Reads and parses a file; unreadable files throw ErrorKind::Io.
RunConfig load_config(const std::string& path);

/// YAML text that parses back to an equal RunConfig.
std::string serialize_config(const RunConfig& config);

/// Builds the problem; expression and coefficient errors are Config errors.
ProblemSpec to_problem(const ProblemConfig& config);

/// Plan for `convergence`: the standard layout for (preset, vary, scheme)
/// with the config's problem and study overrides applied.
ExperimentPlan to_plan(const RunConfig& config, bool fast);

std::string_view to_string(Vary v) noexcept;
std::string_view to_string(Preset p) noexcept;

}  // namespace subdiff::cli
