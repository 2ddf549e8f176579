#pragma once

#include <span>
#include <vector>

#include "subdiff/mesh.hpp"
#include "subdiff/problem.hpp"
#include "subdiff/tridiag.hpp"

namespace subdiff {

/// P1 mass matrix on interior nodes: diag 2h/3, off-diagonal h/6.
TriDiagMatrix assemble_mass(const Mesh1D& mesh);

/// Stiffness matrix of (a(., t) u', v') with quad_order-point Gauss
/// quadrature per element. Throws CoefficientBound if a leaves
/// [1/lambda, lambda] at a quadrature point.
TriDiagMatrix assemble_stiffness(const Mesh1D& mesh, const Coefficient& coeff, double t,
                                 int quad_order = 2);

struct LoadOptions {
    std::span<const double> breakpoints{};
    bool singular_at_zero = false;
    double rel_tol = 1e-12;
};

/// Entries (g, phi_i) for the interior hat functions, integrated adaptively
/// element by element. Elements are split at declared breakpoints.
std::vector<double> load_vector(const Mesh1D& mesh, const SpaceFn& g, const LoadOptions& opts = {});

/// Coefficients of the L2 projection P_h g.
std::vector<double> l2_project(const Mesh1D& mesh, const SpaceFn& g, const LoadOptions& opts = {});

/// Ritz projection R_h(t) g for g in H^1_0, given its derivative dg:
/// (a(t) (R_h g)', phi_i') = (a(t) g', phi_i') for every interior i.
std::vector<double> ritz_project(const Mesh1D& mesh, const Coefficient& coeff, double t,
                                 const SpaceFn& dg, int quad_order = 4);

/// Right-hand side (a(t) g', phi_i') of the Ritz system.
std::vector<double> ritz_load(const Mesh1D& mesh, const Coefficient& coeff, double t,
                              const SpaceFn& dg, int quad_order = 4);

/// Exact L2 norm of the P1 function with nodal values v.
double l2_norm(const Mesh1D& mesh, std::span<const double> v);

/// Nodal interpolant of g at the interior nodes.
std::vector<double> interpolate(const Mesh1D& mesh, const SpaceFn& g);

/// Embeds a P1 function on a coarse mesh into a nested fine mesh. Exact.
std::vector<double> prolong(const Mesh1D& coarse, const Mesh1D& fine, std::span<const double> v);

}  // namespace subdiff
