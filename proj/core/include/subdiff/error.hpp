#pragma once

#include <stdexcept>
#include <string>

namespace subdiff {

/// Broad failure categories. The command-line tool maps these onto its
/// exit-code contract, so the set is kept small and stable.
enum class ErrorKind {
    InvalidArgument,   // bad user input: mesh size, fractional order, grids
    CoefficientBound,  // a(x,t) left [1/lambda, lambda]
    Quadrature,        // adaptive quadrature did not converge
    Numerical,         // solver breakdown, non-SPD system
    ContourAccuracy,   // contour result has a spurious imaginary part
    OracleMismatch,    // two independent reference paths disagree
    Config,            // configuration parse or validation error
    Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace subdiff
