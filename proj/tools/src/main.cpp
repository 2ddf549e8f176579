#include <CLI11.hpp>

#include <iostream>
#include <vector>

#include "subdiff_cli/commands.hpp"

int main(int argc, char** argv) {
    namespace cli = subdiff::cli;

    CLI::App app{"Time-fractional subdiffusion solver and convergence harness", "subdiff"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "subdiff 0.1.0");

    cli::SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run one simulation and write snapshots as CSV");
    solve_cmd->add_option("-c,--config", solve.config_path, "YAML run configuration")
        ->required();
    solve_cmd->add_option("-o,--output", solve.output_path, "CSV destination ('-' for stdout)")
        ->capture_default_str();
    solve_cmd->add_option("--snapshots", solve.snapshots, "Equally spaced snapshot count");

    cli::ConvergenceArgs conv;
    auto* conv_cmd = app.add_subcommand("convergence", "Run a convergence study and print a table");
    conv_cmd->add_option("-c,--config", conv.config_path, "YAML configuration with a study section");
    conv_cmd->add_option("--preset", conv.preset, "Example problem: a | b");
    conv_cmd->add_option("--vary", conv.vary, "M (space), N (time) or T (final time 10^-k)");
    conv_cmd->add_option("--scheme", conv.scheme, "be | l1");
    conv_cmd->add_option("--decay", conv.decay, "With --vary T: space (e_s) or time (e_t)");
    std::vector<double> alphas;
    std::vector<double> grid;
    auto* alphas_opt = conv_cmd->add_option("--alphas", alphas, "Fractional orders");
    auto* grid_opt = conv_cmd->add_option("--grid", grid, "M, N or k values")->expected(0, -1);
    conv_cmd->add_option("--format", conv.format, "markdown | csv")->capture_default_str();
    conv_cmd->add_option("-o,--output", conv.output_path, "Destination ('-' for stdout)")
        ->capture_default_str();
    conv_cmd->add_flag("--fast", conv.fast, "Cheaper references (N = 2000, M_ref = 640)");

    cli::OracleCheckArgs oracle;
    auto* oracle_cmd =
        app.add_subcommand("oracle-check", "Cross-check the stepper against contour quadrature");
    oracle_cmd->add_option("--tolerance", oracle.tolerance, "Residual tolerance")
        ->capture_default_str();
    oracle_cmd->add_option("--alpha", oracle.alpha, "Single fractional order to check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_config;
    }

    if (*solve_cmd) return cli::cmd_solve(solve, std::cout, std::cerr);
    if (alphas_opt->count() > 0) conv.alphas = alphas;
    if (grid_opt->count() > 0) {
        // a bare --grid arrives as one empty result; keep it as an empty grid
        const auto& raw = grid_opt->results();
        const bool bare = raw.size() == 1 && raw.front().empty();
        conv.grid = bare ? std::vector<double>{} : grid;
    }
    if (*conv_cmd) return cli::cmd_convergence(conv, std::cout, std::cerr);
    return cli::cmd_oracle_check(oracle, std::cout, std::cerr);
}
