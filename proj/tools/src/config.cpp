#include "subdiff_cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "subdiff/error.hpp"
#include "subdiff/expression.hpp"

namespace subdiff::cli {

namespace {

struct Reader {
    std::string source;

    [[noreturn]] void fail_at(const YAML::Mark& mark, const std::string& msg) const {
        std::ostringstream os;
        os << source << ':' << mark.line + 1 << ':' << mark.column + 1 << ": " << msg;
        fail(ErrorKind::Config, os.str());
    }

    void expect_map(const YAML::Node& node, const std::string& what) const {
        if (!node.IsMap()) fail_at(node.Mark(), what + " must be a mapping");
    }

    void check_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                    const std::string& section) const {
        for (auto it = map.begin(); it != map.end(); ++it) {
            const auto key = it->first.as<std::string>();
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                std::string msg = "unknown key '" + key + "'";
                if (!section.empty()) msg += " in section '" + section + "'";
                fail_at(it->first.Mark(), msg);
            }
        }
    }

    template <class T>
    T scalar(const YAML::Node& node, const std::string& field, const char* type) const {
        if (!node.IsScalar()) fail_at(node.Mark(), field + ": expected " + type);
        try {
            return node.as<T>();
        } catch (const YAML::BadConversion&) {
            fail_at(node.Mark(), field + ": expected " + type + ", got '" + node.Scalar() + "'");
        }
    }

    double number(const YAML::Node& n, const std::string& f) const {
        const auto v = scalar<double>(n, f, "a number");
        if (!std::isfinite(v)) fail_at(n.Mark(), f + ": value must be finite");
        return v;
    }
    int integer(const YAML::Node& n, const std::string& f) const {
        return scalar<int>(n, f, "an integer");
    }
    bool boolean(const YAML::Node& n, const std::string& f) const {
        return scalar<bool>(n, f, "true or false");
    }
    std::string text(const YAML::Node& n, const std::string& f) const {
        return scalar<std::string>(n, f, "a string");
    }

    std::vector<double> numbers(const YAML::Node& node, const std::string& field) const {
        if (!node.IsSequence()) fail_at(node.Mark(), field + ": expected a list of numbers");
        std::vector<double> out;
        for (const auto& item : node) out.push_back(number(item, field));
        return out;
    }

    std::string expression(const YAML::Node& node, const std::string& field) const {
        const auto s = text(node, field);
        try {
            (void)Expression::parse(s);
        } catch (const Error& e) {
            fail_at(node.Mark(), field + ": " + e.what());
        }
        return s;
    }
};

template <class Enum>
struct Names {
    Enum value;
    const char* name;
};

constexpr Names<Preset> preset_names[] = {{Preset::ExampleA, "a"}, {Preset::ExampleB, "b"}};
constexpr Names<Scheme> scheme_names[] = {{Scheme::BackwardEulerCQ, "be"}, {Scheme::L1, "l1"}};
constexpr Names<Vary> vary_names[] = {
    {Vary::SpatialM, "M"}, {Vary::TemporalN, "N"}, {Vary::FinalTimeDecay, "T"}};
constexpr Names<ReferenceMode> decay_names[] = {{ReferenceMode::FineSpace, "space"},
                                                {ReferenceMode::FineTime, "time"}};

template <class Enum, std::size_t K>
Enum lookup(const Reader& r, const YAML::Node& node, const std::string& field,
            const Names<Enum> (&table)[K]) {
    const auto s = r.text(node, field);
    for (const auto& entry : table) {
        if (s == entry.name) return entry.value;
    }
    std::string allowed;
    for (const auto& entry : table) allowed += std::string(allowed.empty() ? "" : ", ") + entry.name;
    r.fail_at(node.Mark(), field + ": '" + s + "' is not one of " + allowed);
}

template <class Enum, std::size_t K>
const char* name_of(Enum v, const Names<Enum> (&table)[K]) {
    for (const auto& entry : table) {
        if (entry.value == v) return entry.name;
    }
    return "?";
}

ProblemConfig read_problem(const Reader& r, const YAML::Node& node) {
    r.expect_map(node, "problem");
    r.check_keys(node,
                 {"preset", "alpha", "final_time", "coefficient", "lambda", "initial", "source",
                  "breakpoints", "beta"},
                 "problem");
    ProblemConfig p;
    if (node["preset"]) p.preset = lookup(r, node["preset"], "problem.preset", preset_names);
    if (p.preset) {
        for (const char* key : {"coefficient", "lambda", "initial", "source", "breakpoints", "beta"}) {
            if (node[key]) {
                r.fail_at(node[key].Mark(), std::string("problem.") + key +
                                                " cannot be combined with a preset");
            }
        }
    }
    if (const auto n = node["alpha"]) {
        p.alpha = r.number(n, "problem.alpha");
        if (!(p.alpha > 0.0 && p.alpha < 1.0)) {
            std::ostringstream os;
            os << "problem.alpha = " << p.alpha << " is outside the valid interval (0, 1)";
            r.fail_at(n.Mark(), os.str());
        }
    }
    if (const auto n = node["final_time"]) {
        p.final_time = r.number(n, "problem.final_time");
        if (!(p.final_time > 0.0)) r.fail_at(n.Mark(), "problem.final_time must be positive");
    }
    if (const auto n = node["coefficient"]) p.coefficient = r.expression(n, "problem.coefficient");
    if (const auto n = node["lambda"]) {
        p.lambda = r.number(n, "problem.lambda");
        if (!(*p.lambda >= 1.0)) r.fail_at(n.Mark(), "problem.lambda must be >= 1");
    }
    if (const auto n = node["initial"]) p.initial = r.expression(n, "problem.initial");
    if (const auto n = node["source"]) p.source = r.expression(n, "problem.source");
    if (const auto n = node["breakpoints"]) {
        p.breakpoints = r.numbers(n, "problem.breakpoints");
        for (double b : p.breakpoints) {
            if (b < 0.0 || b > 1.0) r.fail_at(n.Mark(), "problem.breakpoints must lie in [0, 1]");
        }
    }
    if (const auto n = node["beta"]) {
        p.beta = r.number(n, "problem.beta");
        if (*p.beta < 0.0 || *p.beta > 2.0) r.fail_at(n.Mark(), "problem.beta must lie in [0, 2]");
    }
    return p;
}

DiscretizationConfig read_discretization(const Reader& r, const YAML::Node& node) {
    r.expect_map(node, "discretization");
    r.check_keys(node, {"elements", "steps", "scheme", "quad_order"}, "discretization");
    DiscretizationConfig d;
    if (const auto n = node["elements"]) {
        d.elements = r.integer(n, "discretization.elements");
        if (d.elements < 2) r.fail_at(n.Mark(), "discretization.elements must be >= 2");
    }
    if (const auto n = node["steps"]) {
        d.steps = r.integer(n, "discretization.steps");
        if (d.steps < 1) r.fail_at(n.Mark(), "discretization.steps must be >= 1");
    }
    if (const auto n = node["scheme"]) {
        d.scheme = lookup(r, n, "discretization.scheme", scheme_names);
    }
    if (const auto n = node["quad_order"]) {
        d.quad_order = r.integer(n, "discretization.quad_order");
        if (d.quad_order < 1 || d.quad_order > 16) {
            r.fail_at(n.Mark(), "discretization.quad_order must lie in [1, 16]");
        }
    }
    return d;
}

OutputConfig read_output(const Reader& r, const YAML::Node& node) {
    r.expect_map(node, "output");
    r.check_keys(node, {"snapshots"}, "output");
    OutputConfig o;
    if (const auto n = node["snapshots"]) {
        o.snapshots = r.integer(n, "output.snapshots");
        if (o.snapshots < 1) r.fail_at(n.Mark(), "output.snapshots must be >= 1");
    }
    return o;
}

StudyConfig read_study(const Reader& r, const YAML::Node& node) {
    r.expect_map(node, "study");
    r.check_keys(node,
                 {"vary", "decay", "grid", "alphas", "elements", "steps", "reference_elements",
                  "reference_steps", "extrapolate"},
                 "study");
    StudyConfig s;
    if (const auto n = node["vary"]) s.vary = lookup(r, n, "study.vary", vary_names);
    if (const auto n = node["decay"]) s.decay = lookup(r, n, "study.decay", decay_names);
    if (const auto n = node["grid"]) s.grid = r.numbers(n, "study.grid");
    if (const auto n = node["alphas"]) {
        s.alphas = r.numbers(n, "study.alphas");
        for (double a : *s.alphas) {
            if (!(a > 0.0 && a < 1.0)) {
                std::ostringstream os;
                os << "study.alphas: " << a << " is outside the valid interval (0, 1)";
                r.fail_at(n.Mark(), os.str());
            }
        }
    }
    const auto positive = [&](const char* key, std::optional<int>& out) {
        if (const auto n = node[key]) {
            out = r.integer(n, std::string("study.") + key);
            if (*out < 1) r.fail_at(n.Mark(), std::string("study.") + key + " must be positive");
        }
    };
    positive("elements", s.elements);
    positive("steps", s.steps);
    positive("reference_elements", s.reference_elements);
    positive("reference_steps", s.reference_steps);
    if (const auto n = node["extrapolate"]) s.extrapolate = r.boolean(n, "study.extrapolate");
    return s;
}

void emit_numbers(YAML::Emitter& out, const std::vector<double>& v) {
    out << YAML::Flow << YAML::BeginSeq;
    for (double x : v) out << x;
    out << YAML::EndSeq;
}

// Coefficient bounds sampled on a tensor grid of (0, 1) x [0, T].
double sampled_lambda(const Expression& a, double final_time) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int j = 0; j <= 50; ++j) {
        const double t = final_time * j / 50.0;
        for (int i = 0; i <= 200; ++i) {
            const double v = a(i / 200.0, t);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(lo > 0.0) || !std::isfinite(hi)) {
        fail(ErrorKind::Config, "problem.coefficient must be positive and finite on (0, 1) x [0, T]");
    }
    return std::max({1.0, hi, 1.0 / lo});
}

}  // namespace

std::string_view to_string(Vary v) noexcept { return name_of(v, vary_names); }
std::string_view to_string(Preset p) noexcept { return name_of(p, preset_names); }

RunConfig parse_config(const std::string& text, const std::string& source) {
    const Reader r{source};
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        r.fail_at(e.mark, e.msg);
    }
    RunConfig c;
    if (root.IsNull()) return c;
    r.expect_map(root, "the configuration");
    r.check_keys(root, {"problem", "discretization", "output", "study"}, "");
    if (const auto n = root["problem"]) c.problem = read_problem(r, n);
    if (const auto n = root["discretization"]) c.discretization = read_discretization(r, n);
    if (const auto n = root["output"]) c.output = read_output(r, n);
    if (const auto n = root["study"]) c.study = read_study(r, n);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

std::string serialize_config(const RunConfig& c) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;

    const auto& p = c.problem;
    out << YAML::Key << "problem" << YAML::Value << YAML::BeginMap;
    if (p.preset) out << YAML::Key << "preset" << YAML::Value << name_of(*p.preset, preset_names);
    out << YAML::Key << "alpha" << YAML::Value << p.alpha;
    out << YAML::Key << "final_time" << YAML::Value << p.final_time;
    if (!p.preset) {
        out << YAML::Key << "coefficient" << YAML::Value << YAML::DoubleQuoted << p.coefficient;
        if (p.lambda) out << YAML::Key << "lambda" << YAML::Value << *p.lambda;
        out << YAML::Key << "initial" << YAML::Value << YAML::DoubleQuoted << p.initial;
        out << YAML::Key << "source" << YAML::Value << YAML::DoubleQuoted << p.source;
        out << YAML::Key << "breakpoints" << YAML::Value;
        emit_numbers(out, p.breakpoints);
        if (p.beta) out << YAML::Key << "beta" << YAML::Value << *p.beta;
    }
    out << YAML::EndMap;

    const auto& d = c.discretization;
    out << YAML::Key << "discretization" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "elements" << YAML::Value << d.elements;
    out << YAML::Key << "steps" << YAML::Value << d.steps;
    out << YAML::Key << "scheme" << YAML::Value << name_of(d.scheme, scheme_names);
    out << YAML::Key << "quad_order" << YAML::Value << d.quad_order;
    out << YAML::EndMap;

    out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "snapshots" << YAML::Value << c.output.snapshots;
    out << YAML::EndMap;

    if (c.study) {
        const auto& s = *c.study;
        out << YAML::Key << "study" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "vary" << YAML::Value << name_of(s.vary, vary_names);
        out << YAML::Key << "decay" << YAML::Value << name_of(s.decay, decay_names);
        if (s.grid) {
            out << YAML::Key << "grid" << YAML::Value;
            emit_numbers(out, *s.grid);
        }
        if (s.alphas) {
            out << YAML::Key << "alphas" << YAML::Value;
            emit_numbers(out, *s.alphas);
        }
        const auto opt = [&](const char* key, const std::optional<int>& v) {
            if (v) out << YAML::Key << key << YAML::Value << *v;
        };
        opt("elements", s.elements);
        opt("steps", s.steps);
        opt("reference_elements", s.reference_elements);
        opt("reference_steps", s.reference_steps);
        if (s.extrapolate) out << YAML::Key << "extrapolate" << YAML::Value << *s.extrapolate;
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

ProblemSpec to_problem(const ProblemConfig& c) {
    if (c.preset) return preset_problem(*c.preset, c.alpha, c.final_time);

    ProblemSpec p;
    p.alpha = c.alpha;
    p.final_time = c.final_time;
    p.beta = c.beta;

    const auto a = Expression::parse(c.coefficient);
    p.coeff.eval = [a](double x, double t) { return a(x, t); };
    p.coeff.lambda = c.lambda ? *c.lambda : sampled_lambda(a, c.final_time);

    const auto u0 = Expression::parse(c.initial);
    if (u0.uses_t()) fail(ErrorKind::Config, "problem.initial must not depend on t");
    if (!(u0.is_constant() && u0(0.5, 0.0) == 0.0)) {
        p.u0 = [u0](double x) { return u0(x, 0.0); };
        if (!std::isfinite(u0(0.0, 0.0))) p.singular_at_zero = true;
        if (!std::isfinite(u0(1.0, 0.0))) {
            fail(ErrorKind::Config, "problem.initial: only a singularity at x = 0 is supported");
        }
    }

    const auto f = Expression::parse(c.source);
    if (f.is_constant() && f(0.5, 0.0) == 0.0) {
        p.source = SourceTerm::zero();
    } else if (!f.uses_t()) {
        p.source = SourceTerm::separable([](double) { return 1.0; },
                                         [f](double x) { return f(x, 0.0); });
    } else {
        p.source = SourceTerm::general([f](double x, double t) { return f(x, t); });
    }

    p.breakpoints = c.breakpoints;
    for (const auto* e : {&u0, &f}) {
        for (double b : e->indicator_endpoints()) {
            if (b > 0.0 && b < 1.0) p.breakpoints.push_back(b);
        }
    }
    std::sort(p.breakpoints.begin(), p.breakpoints.end());
    p.breakpoints.erase(std::unique(p.breakpoints.begin(), p.breakpoints.end()),
                        p.breakpoints.end());
    p.validate();
    return p;
}

ExperimentPlan to_plan(const RunConfig& c, bool fast) {
    const StudyConfig study = c.study.value_or(StudyConfig{});
    StudyRequest request;
    request.preset = c.problem.preset.value_or(Preset::ExampleA);
    request.vary = study.vary;
    request.scheme = c.discretization.scheme;
    request.decay = study.decay;
    request.fast = fast;

    ExperimentPlan plan = standard_plan(request);
    plan.final_time = c.problem.final_time;
    plan.quad_order = c.discretization.quad_order;
    if (!c.problem.preset) {
        plan.problem = to_problem(c.problem);
        const auto cut = plan.title.find(", example");
        if (cut != std::string::npos) plan.title = plan.title.substr(0, cut) + ", custom problem";
    }
    if (study.grid) plan.grid = *study.grid;
    if (study.alphas) plan.alphas = *study.alphas;
    if (study.elements) plan.elements = *study.elements;
    if (study.steps) plan.steps = *study.steps;
    if (study.reference_elements) plan.reference.elements = *study.reference_elements;
    if (study.reference_steps) plan.reference.steps = *study.reference_steps;
    if (study.extrapolate) plan.reference.extrapolate = *study.extrapolate;
    return plan;
}

}  // namespace subdiff::cli
