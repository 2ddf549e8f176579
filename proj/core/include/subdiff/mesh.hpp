#pragma once

#include <vector>

namespace subdiff {

/// Uniform partition of (0, 1) into M elements. Degrees of freedom are the
/// M - 1 interior nodes (homogeneous Dirichlet data at both ends).
class Mesh1D {
public:
    /// Throws InvalidArgument for M < 2.
    explicit Mesh1D(int elements);

    [[nodiscard]] int elements() const noexcept { return elements_; }
    [[nodiscard]] int interior() const noexcept { return elements_ - 1; }
    [[nodiscard]] double h() const noexcept { return 1.0 / elements_; }

    /// x_i = i / M, exact at both ends.
    [[nodiscard]] double node(int i) const noexcept {
        return static_cast<double>(i) / static_cast<double>(elements_);
    }

    /// Positions of the interior nodes x_1 .. x_{M-1}.
    [[nodiscard]] std::vector<double> interior_nodes() const;

    friend bool operator==(const Mesh1D&, const Mesh1D&) = default;

private:
    int elements_;
};

}  // namespace subdiff
