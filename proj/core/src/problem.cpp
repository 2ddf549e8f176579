#include "subdiff/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subdiff/error.hpp"

namespace subdiff {

Coefficient Coefficient::constant(double value) {
    require(value > 0.0, ErrorKind::InvalidArgument, "constant coefficient must be positive");
    Coefficient c;
    c.eval = [value](double, double) { return value; };
    c.lambda = std::max(value, 1.0 / value);
    c.lipschitz_t = 0.0;
    return c;
}

SourceTerm SourceTerm::general(SpaceTimeFn f) {
    SourceTerm s;
    s.general_ = std::move(f);
    return s;
}

SourceTerm SourceTerm::separable(std::function<double(double)> time_factor, SpaceFn profile) {
    SourceTerm s;
    s.time_factor_ = std::move(time_factor);
    s.profile_ = std::move(profile);
    return s;
}

double SourceTerm::operator()(double x, double t) const {
    if (profile_) return time_factor_(t) * profile_(x);
    if (general_) return general_(x, t);
    return 0.0;
}

SpaceFn SourceTerm::at(double t) const {
    if (profile_) {
        const double g = time_factor_(t);
        return [g, p = profile_](double x) { return g * p(x); };
    }
    if (general_) return [t, f = general_](double x) { return f(x, t); };
    return [](double) { return 0.0; };
}

void ProblemSpec::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << "alpha = " << alpha << " is outside the valid interval (0, 1)";
        fail(ErrorKind::InvalidArgument, os.str());
    }
    if (!(final_time > 0.0) || !std::isfinite(final_time)) {
        std::ostringstream os;
        os << "final_time = " << final_time << " must be positive";
        fail(ErrorKind::InvalidArgument, os.str());
    }
    require(static_cast<bool>(coeff.eval), ErrorKind::InvalidArgument, "coefficient is not set");
    require(coeff.lambda >= 1.0, ErrorKind::InvalidArgument,
            "coefficient bound lambda must be >= 1");
    for (double b : breakpoints) {
        if (!(b >= 0.0 && b <= 1.0)) {
            std::ostringstream os;
            os << "breakpoint " << b << " lies outside [0, 1]";
            fail(ErrorKind::InvalidArgument, os.str());
        }
    }
}

}  // namespace subdiff
