#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "subdiff/error.hpp"

namespace subdiff {

/// Symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal. Mass, stiffness and every shifted system in the library
/// have this shape.
template <class T>
struct SymTridiag {
    std::vector<T> diag;
    std::vector<T> off;  // off[i] couples rows i and i+1

    SymTridiag() = default;
    explicit SymTridiag(std::size_t n) : diag(n, T{}), off(n > 0 ? n - 1 : 0, T{}) {}

    [[nodiscard]] std::size_t size() const noexcept { return diag.size(); }

    /// y = A x. Works for a real matrix acting on a complex vector.
    template <class V>
    void multiply(std::span<const V> x, std::span<V> y) const {
        const std::size_t n = size();
        require(x.size() == n && y.size() == n, ErrorKind::InvalidArgument,
                "SymTridiag::multiply: dimension mismatch");
        if (n == 0) return;
        if (n == 1) {
            y[0] = diag[0] * x[0];
            return;
        }
        y[0] = diag[0] * x[0] + off[0] * x[1];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            y[i] = off[i - 1] * x[i - 1] + diag[i] * x[i] + off[i] * x[i + 1];
        }
        y[n - 1] = off[n - 2] * x[n - 2] + diag[n - 1] * x[n - 1];
    }

    template <class V>
    [[nodiscard]] std::vector<V> operator*(std::span<const V> x) const {
        std::vector<V> y(size());
        multiply<V>(x, y);
        return y;
    }

    [[nodiscard]] std::vector<T> operator*(const std::vector<T>& x) const {
        return *this * std::span<const T>(x);
    }

    /// x^T A y
    [[nodiscard]] T bilinear(std::span<const T> x, std::span<const T> y) const {
        std::vector<T> ay(size());
        multiply<T>(y, ay);
        T s{};
        for (std::size_t i = 0; i < size(); ++i) s += x[i] * ay[i];
        return s;
    }
};

using TriDiagMatrix = SymTridiag<double>;
using ComplexTriDiag = SymTridiag<std::complex<double>>;

/// a*A + b*B for matrices of equal size; the scalar type of the result
/// follows the coefficients.
template <class S, class T>
[[nodiscard]] SymTridiag<S> combine(S a, const SymTridiag<T>& A, S b, const SymTridiag<T>& B) {
    require(A.size() == B.size(), ErrorKind::InvalidArgument, "combine: size mismatch");
    SymTridiag<S> C(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) C.diag[i] = a * A.diag[i] + b * B.diag[i];
    for (std::size_t i = 0; i < A.off.size(); ++i) C.off[i] = a * A.off[i] + b * B.off[i];
    return C;
}

/// Thomas algorithm, overwriting rhs with the solution. scratch must hold
/// size() entries. Real systems must be SPD: a non-positive pivot is a
/// breakdown. Complex symmetric systems only require non-zero pivots.
template <class T>
void solve_in_place(const SymTridiag<T>& A, std::span<T> rhs, std::span<T> scratch) {
    const std::size_t n = A.size();
    require(rhs.size() == n && scratch.size() >= n, ErrorKind::InvalidArgument,
            "solve_in_place: dimension mismatch");
    if (n == 0) return;

    auto check_pivot = [](const T& p, std::size_t row) {
        bool ok;
        if constexpr (std::is_floating_point_v<T>) {
            ok = p > T{0} && std::isfinite(p);
        } else {
            ok = std::abs(p) > 0.0 && std::isfinite(std::abs(p));
        }
        if (!ok) {
            fail(ErrorKind::Numerical,
                 "tridiagonal solve broke down at row " + std::to_string(row) +
                     " (system is not positive definite)");
        }
    };

    // scratch holds the modified super-diagonal c'_i.
    T pivot = A.diag[0];
    check_pivot(pivot, 0);
    if (n > 1) scratch[0] = A.off[0] / pivot;
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = A.diag[i] - A.off[i - 1] * scratch[i - 1];
        check_pivot(pivot, i);
        if (i + 1 < n) scratch[i] = A.off[i] / pivot;
        rhs[i] = (rhs[i] - A.off[i - 1] * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i] * rhs[i + 1];
}

template <class T>
[[nodiscard]] std::vector<T> solve(const SymTridiag<T>& A, std::span<const T> rhs) {
    std::vector<T> x(rhs.begin(), rhs.end());
    std::vector<T> scratch(A.size());
    solve_in_place<T>(A, x, scratch);
    return x;
}

template <class T>
[[nodiscard]] std::vector<T> solve(const SymTridiag<T>& A, const std::vector<T>& rhs) {
    return solve(A, std::span<const T>(rhs));
}

}  // namespace subdiff
