#include "subdiff/mesh.hpp"

#include <string>

#include "subdiff/error.hpp"

namespace subdiff {

Mesh1D::Mesh1D(int elements) : elements_(elements) {
    require(elements >= 2, ErrorKind::InvalidArgument,
            "invalid mesh: need at least 2 elements, got " + std::to_string(elements));
}

std::vector<double> Mesh1D::interior_nodes() const {
    std::vector<double> x(interior());
    for (int i = 1; i < elements_; ++i) x[i - 1] = node(i);
    return x;
}

}  // namespace subdiff
