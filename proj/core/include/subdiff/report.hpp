#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subdiff/weights.hpp"

namespace subdiff {

enum class Vary { SpatialM, TemporalN, FinalTimeDecay };
enum class ReferenceMode { FineSpace, FineTime };

/// How consecutive errors turn into a rate.
///   Refinement: rate_i = log(e_i / e_{i+1}) / log(g_{i+1} / g_i)   (g = M or N)
///   Growth:     rate_i = log10(e_{i+1} / e_i) / (k_{i+1} - k_i)    (T = 10^{-k})
///   Decay:      rate_i = log10(e_i / e_{i+1}) / (k_{i+1} - k_i)
/// Growth fits e ~ T^{-p} (spatial error blowing up as T -> 0), Decay fits
/// e ~ T^{p} (temporal error at fixed N shrinking with T).
enum class RateMode { Refinement, Growth, Decay };

/// One rate per adjacent pair; std::nullopt where an error is zero,
/// negative or not finite.
std::vector<std::optional<double>> extract_rates(std::span<const double> errors,
                                                 std::span<const double> grid, RateMode mode);

struct ReportRow {
    double alpha = 0.0;
    double grid_value = 0.0;
    double error = 0.0;
    std::optional<double> rate;  // empty for the first grid entry

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ConvergenceReport {
    std::string title;
    Vary vary = Vary::SpatialM;
    ReferenceMode reference_mode = ReferenceMode::FineSpace;
    Scheme scheme = Scheme::BackwardEulerCQ;
    std::vector<double> alphas;
    std::vector<double> grid;
    std::vector<double> predicted;  // per alpha; NaN when unknown
    std::vector<ReportRow> rows;    // alpha-major, grid-minor

    [[nodiscard]] RateMode rate_mode() const noexcept {
        if (vary != Vary::FinalTimeDecay) return RateMode::Refinement;
        return reference_mode == ReferenceMode::FineSpace ? RateMode::Growth : RateMode::Decay;
    }
    [[nodiscard]] std::vector<double> errors(std::size_t alpha_index) const;
    [[nodiscard]] std::vector<std::optional<double>> rates(std::size_t alpha_index) const;

    /// Refinement studies: the last rate. Decay studies: mean per-decade
    /// exponent over the last three decades (all decades if fewer).
    [[nodiscard]] std::optional<double> summary_rate(std::size_t alpha_index) const;

    friend bool operator==(const ConvergenceReport&, const ConvergenceReport&) = default;
};

/// Scientific notation with the given number of significant digits and a
/// bare exponent: format_sci(1.4412e-5, 3) == "1.44e-5".
std::string format_sci(double value, int significant);

/// alpha,grid_value,error,rate -- one row per (alpha, grid point), errors
/// with 6 significant digits.
std::string to_csv(const ConvergenceReport& report);

/// Table with alphas as rows and grid values as columns; the last column is
/// "rate (predicted)".
std::string to_markdown(const ConvergenceReport& report);

}  // namespace subdiff
