#pragma once

#include "mlnl/field.hpp"
#include "mlnl/grid.hpp"
#include "mlnl/operators.hpp"

#include <vector>

namespace mlnl {

/// Steady state of the mixed operator with singular source: A w = f / w^gamma,
/// approached through the same k-regularized ladder as the parabolic runs.
struct SteadyState {
    Field w;
    int k_used = 1;       // final ladder level
    double residual = 0.0; // sup norm of A w - T_k(f) (w + 1/k)^{-gamma}
};

/// Initial guess for each level's inner iteration: from zero (the canonical
/// subsolution) or from the plain linear solve A w = T_k(f).  Two starts
/// reaching the same state is the uniqueness cross-check.
enum class EllipticStart { zero, linear };

/**
 * Solves the level-k problems A w_k = T_k(f) (w_k + 1/k)^{-gamma} for each
 * ladder level in turn and returns the top level.
 *
 * Each level runs a Newton sweep on F(w) = A w - T_k(f)(w+1/k)^{-gamma}: the
 * Jacobian A + diag(gamma T_k(f)(w+1/k)^{-gamma-1}) is an M-matrix and F is
 * componentwise concave, so from the zero start the sweeps increase
 * monotonically to the unique root (plain substitution sweeps oscillate once
 * gamma is large).  Sweeps stop when the successive max-difference falls
 * below `successive_tol`; ten consecutive growing increments abort with a
 * divergence diagnostic.
 */
SteadyState solve_elliptic(const OperatorMatrix& op, double gamma, const Field& f,
                           const std::vector<int>& k_ladder,
                           EllipticStart start = EllipticStart::zero,
                           double successive_tol = 1e-11, int max_sweeps = 200);

/// Convenience overload assembling the mixed operator internally.
SteadyState solve_elliptic(const Grid& grid, double s, double gamma, const Field& f,
                           const std::vector<int>& k_ladder,
                           EllipticStart start = EllipticStart::zero,
                           double successive_tol = 1e-11, int max_sweeps = 200);

/// Reflection through the domain center, axis by axis; symmetric data must
/// produce fields invariant under it.
Field reflect(const Grid& grid, const Field& u);

} // namespace mlnl
