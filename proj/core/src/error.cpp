#include "subdiff/error.hpp"

namespace subdiff {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid argument";
        case ErrorKind::CoefficientBound: return "coefficient bound violation";
        case ErrorKind::Quadrature: return "quadrature failure";
        case ErrorKind::Numerical: return "numerical failure";
        case ErrorKind::ContourAccuracy: return "contour accuracy";
        case ErrorKind::OracleMismatch: return "oracle inconsistency";
        case ErrorKind::Config: return "configuration error";
        case ErrorKind::Io: return "I/O error";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace subdiff
