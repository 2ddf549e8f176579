#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "subdiff/error.hpp"
#include "subdiff_cli/config.hpp"

using namespace subdiff;
using namespace subdiff::cli;

namespace {

std::string config_error(const std::string& text) {
    try {
        (void)parse_config(text, "run.yaml");
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Config);
        return e.what();
    }
    ADD_FAILURE() << "accepted:\n" << text;
    return {};
}

}  // namespace

TEST(Config, ShippedFilesParse) {
    for (const char* name : {"example_a.yaml", "example_b.yaml", "custom.yaml"}) {
        const auto c = load_config(std::string(SUBDIFF_CONFIG_DIR) + "/" + name);
        EXPECT_NO_THROW((void)to_problem(c.problem)) << name;
    }
}

TEST(Config, DefaultsWhenSectionsAreMissing) {
    const auto c = parse_config("problem:\n  alpha: 0.3\n");
    EXPECT_DOUBLE_EQ(c.problem.alpha, 0.3);
    EXPECT_EQ(c.discretization, DiscretizationConfig{});
    EXPECT_FALSE(c.study.has_value());
}

TEST(Config, RoundTrip) {
    auto c = load_config(std::string(SUBDIFF_CONFIG_DIR) + "/custom.yaml");
    c.study = StudyConfig{};
    c.study->vary = Vary::FinalTimeDecay;
    c.study->decay = ReferenceMode::FineTime;
    c.study->grid = std::vector<double>{3, 4, 5};
    c.study->reference_steps = 400;
    c.study->extrapolate = false;
    c.problem.alpha = 0.1 + 0.2;  // not exactly representable in short decimal
    EXPECT_EQ(parse_config(serialize_config(c)), c);

    const auto a = load_config(std::string(SUBDIFF_CONFIG_DIR) + "/example_a.yaml");
    EXPECT_EQ(parse_config(serialize_config(a)), a);
}

TEST(Config, UnknownKeyReportsLineAndColumn) {
    const auto msg = config_error("problem:\n  alpha: 0.5\n  alhpa: 0.4\n");
    EXPECT_NE(msg.find("run.yaml:3:3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("alhpa"), std::string::npos) << msg;
}

TEST(Config, AlphaOutsideTheInterval) {
    const auto msg = config_error("problem:\n  alpha: 1.5\n");
    EXPECT_NE(msg.find("problem.alpha = 1.5 is outside the valid interval (0, 1)"),
              std::string::npos)
        << msg;
}

TEST(Config, RejectsInvalidValues) {
    config_error("problem:\n  preset: a\n  initial: \"x\"\n");
    config_error("problem:\n  preset: c\n");
    config_error("discretization:\n  scheme: rk4\n");
    config_error("discretization:\n  elements: 1\n");
    config_error("discretization:\n  steps: ten\n");
    config_error("study:\n  vary: Q\n");
    config_error("study:\n  grid: 5\n");
    config_error("problem: [1, 2]\n");
    config_error("problem:\n  alpha: [0.5\n");
}

TEST(Config, ProblemFromExpressions) {
    ProblemConfig pc;
    pc.alpha = 0.4;
    pc.coefficient = "2 + x * cos(t)";
    pc.initial = "x^(-0.25)";
    pc.source = "exp(t) * indicator(0.2, 0.6)";
    const auto p = to_problem(pc);
    EXPECT_TRUE(p.singular_at_zero);
    EXPECT_GE(p.coeff.lambda, 3.0);
    EXPECT_NEAR(p.source(0.3, 1.0), std::exp(1.0), 1e-15);
    EXPECT_EQ(p.breakpoints, (std::vector<double>{0.2, 0.6}));

    pc.coefficient = "x - 0.5";
    EXPECT_THROW((void)to_problem(pc), Error);
    pc.coefficient = "1";
    pc.initial = "t";
    EXPECT_THROW((void)to_problem(pc), Error);
}

TEST(Config, PlanOverrides) {
    auto c = parse_config(
        "problem:\n  preset: b\n"
        "discretization:\n  scheme: l1\n"
        "study:\n  vary: N\n  grid: [10, 20]\n  elements: 8\n  reference_steps: 200\n");
    const auto plan = to_plan(c, false);
    EXPECT_EQ(plan.vary, Vary::TemporalN);
    EXPECT_EQ(plan.scheme, Scheme::L1);
    EXPECT_EQ(plan.grid, (std::vector<double>{10, 20}));
    EXPECT_EQ(plan.elements, 8);
    EXPECT_EQ(plan.reference.steps, 200);
}

TEST(Config, MissingFileIsAnIoError) {
    try {
        (void)load_config("/nonexistent/run.yaml");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Io);
    }
}
