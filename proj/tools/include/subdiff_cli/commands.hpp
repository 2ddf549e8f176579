#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subdiff/error.hpp"

namespace subdiff::cli {

/// Process exit codes. Stable contract.
enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_config = 2,
    exit_numeric = 3,
    exit_io = 4,
};

ExitCode exit_code_for(ErrorKind kind) noexcept;

/// Worker count from SUBDIFF_THREADS (default 1). Malformed values are a
/// Config error.
int threads_from_env();

struct SolveArgs {
    std::string config_path;
    std::string output_path = "-";  // "-" writes the CSV to `out`
    std::optional<int> snapshots;
};

/// Writes x followed by one column per snapshot (boundary zeros included)
/// and reports the final-time L2 norm.
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);

struct ConvergenceArgs {
    std::optional<std::string> config_path;
    std::optional<std::string> preset;  // "a" | "b"
    std::optional<std::string> vary;    // "M" | "N" | "T"
    std::optional<std::string> scheme;  // "be" | "l1"
    std::optional<std::string> decay;   // "space" | "time"
    std::optional<std::vector<double>> alphas;
    std::optional<std::vector<double>> grid;
    std::string format = "markdown";    // "markdown" | "csv"
    std::string output_path = "-";
    bool fast = false;
};

int cmd_convergence(const ConvergenceArgs& args, std::ostream& out, std::ostream& err);

struct OracleCheckArgs {
    double tolerance = 1e-8;
    std::optional<double> alpha;  // default: 0.25, 0.5 and 0.75
};

/// Representation identities, the scalar dual path and kernel sampling.
/// Returns exit_check_failed, with the worst residual, when any check fails.
int cmd_oracle_check(const OracleCheckArgs& args, std::ostream& out, std::ostream& err);

}  // namespace subdiff::cli
