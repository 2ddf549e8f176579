#include "subdiff/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "subdiff/error.hpp"

namespace subdiff {

std::vector<std::optional<double>> extract_rates(std::span<const double> errors,
                                                 std::span<const double> grid, RateMode mode) {
    require(errors.size() == grid.size(), ErrorKind::InvalidArgument,
            "extract_rates: errors and grid differ in length");
    require(errors.size() >= 2, ErrorKind::InvalidArgument, "extract_rates: need >= 2 entries");
    std::vector<std::optional<double>> rates;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double e0 = errors[i];
        const double e1 = errors[i + 1];
        if (!(e0 > 0.0 && e1 > 0.0 && std::isfinite(e0) && std::isfinite(e1))) {
            rates.emplace_back(std::nullopt);
            continue;
        }
        if (mode == RateMode::Refinement) {
            rates.emplace_back(std::log(e0 / e1) / std::log(grid[i + 1] / grid[i]));
        } else if (mode == RateMode::Growth) {
            rates.emplace_back(std::log10(e1 / e0) / (grid[i + 1] - grid[i]));
        } else {
            rates.emplace_back(std::log10(e0 / e1) / (grid[i + 1] - grid[i]));
        }
    }
    return rates;
}

std::vector<double> ConvergenceReport::errors(std::size_t alpha_index) const {
    std::vector<double> out;
    for (const auto& row : rows) {
        if (row.alpha == alphas.at(alpha_index)) out.push_back(row.error);
    }
    return out;
}

std::vector<std::optional<double>> ConvergenceReport::rates(std::size_t alpha_index) const {
    std::vector<std::optional<double>> out;
    for (const auto& row : rows) {
        if (row.alpha == alphas.at(alpha_index)) out.push_back(row.rate);
    }
    if (!out.empty()) out.erase(out.begin());
    return out;
}

std::optional<double> ConvergenceReport::summary_rate(std::size_t alpha_index) const {
    const auto r = rates(alpha_index);
    if (r.empty()) return std::nullopt;
    if (rate_mode() == RateMode::Refinement) return r.back();
    const std::size_t take = std::min<std::size_t>(3, r.size());
    double sum = 0.0;
    for (std::size_t i = r.size() - take; i < r.size(); ++i) {
        if (!r[i]) return std::nullopt;
        sum += *r[i];
    }
    return sum / static_cast<double>(take);
}

std::string format_sci(double value, int significant) {
    if (!std::isfinite(value)) return value != value ? "nan" : (value > 0 ? "inf" : "-inf");
    if (value == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", std::max(significant - 1, 0), value);
    std::string s(buf);
    const auto epos = s.find('e');
    return s.substr(0, epos) + "e" + std::to_string(std::stoi(s.substr(epos + 1)));
}

namespace {

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string grid_label(double g) {
    std::ostringstream os;
    os << g;
    return os.str();
}

}  // namespace

std::string to_csv(const ConvergenceReport& report) {
    std::ostringstream os;
    os << "alpha,grid_value,error,rate\n";
    for (const auto& row : report.rows) {
        os << row.alpha << ',' << grid_label(row.grid_value) << ','
           << format_sci(row.error, 6) << ',';
        if (row.rate) os << format_sci(*row.rate, 6);
        os << '\n';
    }
    return os.str();
}

std::string to_markdown(const ConvergenceReport& report) {
    std::ostringstream os;
    if (!report.title.empty()) os << "**" << report.title << "**\n\n";
    const char* axis = report.vary == Vary::SpatialM    ? "M"
                       : report.vary == Vary::TemporalN ? "N"
                                                        : "k";
    os << "| alpha \\ " << axis << " |";
    for (double g : report.grid) os << ' ' << grid_label(g) << " |";
    os << " rate |\n|---|";
    for (std::size_t i = 0; i < report.grid.size(); ++i) os << "---|";
    os << "---|\n";
    for (std::size_t a = 0; a < report.alphas.size(); ++a) {
        os << "| " << report.alphas[a] << " |";
        for (double e : report.errors(a)) os << ' ' << format_sci(e, 3) << " |";
        const auto s = report.summary_rate(a);
        os << ' ' << (s ? fixed2(*s) : std::string("-"));
        const double p = a < report.predicted.size() ? report.predicted[a] : std::nan("");
        if (std::isfinite(p)) os << " (" << fixed2(p) << ")";
        os << " |\n";
    }
    return os.str();
}

}  // namespace subdiff
