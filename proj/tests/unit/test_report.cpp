#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "subdiff/error.hpp"
#include "subdiff/report.hpp"

using namespace subdiff;

namespace {

ConvergenceReport sample_report() {
    ConvergenceReport r;
    r.title = "spatial error";
    r.vary = Vary::SpatialM;
    r.alphas = {0.5};
    r.grid = {10, 20, 40};
    r.predicted = {2.0};
    r.rows = {{0.5, 10, 4e-3, std::nullopt}, {0.5, 20, 1e-3, 2.0}, {0.5, 40, 2.5e-4, 2.0}};
    return r;
}

}  // namespace

TEST(Rates, RefinementHalvingGivesOrderOne) {
    const std::vector<double> e{1e-2, 5e-3, 2.5e-3};
    const std::vector<double> g{100, 200, 400};
    for (const auto& r : extract_rates(e, g, RateMode::Refinement)) EXPECT_NEAR(*r, 1.0, 1e-12);
}

TEST(Rates, DecayAndGrowthHaveOppositeSigns) {
    const std::vector<double> e{1e-3, 1e-4};
    const std::vector<double> k{3, 4};
    EXPECT_NEAR(*extract_rates(e, k, RateMode::Decay)[0], 1.0, 1e-12);
    EXPECT_NEAR(*extract_rates(e, k, RateMode::Growth)[0], -1.0, 1e-12);
}

TEST(Rates, NonPositiveErrorsHaveNoRate) {
    const std::vector<double> e{1e-3, 0.0, std::numeric_limits<double>::quiet_NaN()};
    const std::vector<double> g{1, 2, 4};
    const auto r = extract_rates(e, g, RateMode::Refinement);
    EXPECT_FALSE(r[0].has_value());
    EXPECT_FALSE(r[1].has_value());
    EXPECT_THROW((void)extract_rates(std::vector<double>{1.0}, std::vector<double>{1.0},
                                     RateMode::Refinement),
                 Error);
}

TEST(Summary, DecayAveragesTheLastThreeDecades) {
    ConvergenceReport r;
    r.vary = Vary::FinalTimeDecay;
    r.reference_mode = ReferenceMode::FineTime;
    r.alphas = {0.5};
    r.grid = {3, 4, 5, 6, 7};
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        std::optional<double> rate;
        if (i > 0) rate = 0.1 * static_cast<double>(i);
        r.rows.push_back({0.5, r.grid[i], 1e-3, rate});
    }
    EXPECT_EQ(r.rate_mode(), RateMode::Decay);
    EXPECT_NEAR(*r.summary_rate(0), 0.3, 1e-12);
    r.reference_mode = ReferenceMode::FineSpace;
    EXPECT_EQ(r.rate_mode(), RateMode::Growth);
}

TEST(Summary, RefinementUsesTheLastRate) {
    const auto r = sample_report();
    EXPECT_EQ(r.errors(0).size(), 3u);
    EXPECT_EQ(r.rates(0).size(), 2u);
    EXPECT_DOUBLE_EQ(*r.summary_rate(0), 2.0);
}

TEST(Format, Scientific) {
    EXPECT_EQ(format_sci(1.4412e-5, 3), "1.44e-5");
    EXPECT_EQ(format_sci(-2.5, 2), "-2.5e0");
    EXPECT_EQ(format_sci(123456.0, 6), "1.23456e5");
    EXPECT_EQ(format_sci(0.0, 3), "0");
    EXPECT_EQ(format_sci(std::nan(""), 3), "nan");
}

TEST(Format, Csv) {
    EXPECT_EQ(to_csv(sample_report()),
              "alpha,grid_value,error,rate\n"
              "0.5,10,4.00000e-3,\n"
              "0.5,20,1.00000e-3,2.00000e0\n"
              "0.5,40,2.50000e-4,2.00000e0\n");
}

TEST(Format, Markdown) {
    EXPECT_EQ(to_markdown(sample_report()),
              "**spatial error**\n\n"
              "| alpha \\ M | 10 | 20 | 40 | rate |\n"
              "|---|---|---|---|---|\n"
              "| 0.5 | 4.00e-3 | 1.00e-3 | 2.50e-4 | 2.00 (2.00) |\n");
}
