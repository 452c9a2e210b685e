#pragma once

#include <limits>

#include "mlnl/evolve.hpp"
#include "mlnl/kernel_weights.hpp"

namespace mlnl {

/// Pass for p, q, or r to request the sup-norm variant of any of the
/// space-time functionals below.
inline constexpr double sup_exponent = std::numeric_limits<double>::infinity();

/// Discrete L^p norm of a trajectory over the space-time cylinder.
///
/// Space is quadratured with node weight h^n (interior nodes only; the field
/// is extended by zero outside, so boundary cells contribute nothing), time
/// with the right-endpoint rule matching the implicit stepping: slices
/// m = 1..M each carry weight tau, the initial slice is excluded.  For
/// p = sup_exponent the result is the max of |u| over *all* slices 0..M.
///
/// Pre: p >= 1 or p == sup_exponent, tau > 0, every field sized to the grid.
double lp_space_time(const Grid& grid, double tau, const Trajectory& traj, double p);

/// Mixed-norm L^r in time of the spatial L^q norm: the per-slice spatial
/// norm S_m = (sum_i h^n |u_i^m|^q)^{1/q} (max_i |u_i^m| for q = sup) is
/// aggregated as (sum_{m>=1} tau S_m^r)^{1/r}, or max over slices 0..M for
/// r = sup.  With r == q == p this reproduces lp_space_time exactly.
double bochner_norm(const Grid& grid, double tau, const Trajectory& traj, double r, double q);

/// Weight options used by the fractional q-seminorm for a given pair (s, q):
/// kernel power q, with the near-diagonal curvature correction enabled
/// exactly when it is available (q*s < 2).
KernelWeightOptions seminorm_weight_options(double s, double q);

/// Discrete Gagliardo q-seminorm of a zero-extended field:
///
///   [u]_q^q = h^n [ sum_{i != j} W_ij |u_i - u_j|^q + 2 sum_i kappa_i |u_i|^q ]
///
/// where W and kappa come from a kernel table with power q (weights decay as
/// |z|^{-(n + q s)}).  The kappa term is the exterior half of the double
/// integral: against the zero exterior data every |u_i - 0|^q pairs with the
/// tail mass, once for each order of the pair.  For q = 2 the sum collapses
/// to the quadratic form of the fractional operator built from the same
/// table: [u]_2^2 = (2 / normalization) h^n u^T A u.
///
/// The first overload reuses a caller-built table (its kernel_power_q() is
/// the q of the seminorm); the second builds one with
/// seminorm_weight_options(s, q) and forwards.
double gagliardo_seminorm(const KernelWeights& weights, const std::vector<double>& u);
double gagliardo_seminorm(const Grid& grid, const std::vector<double>& u, double s, double q);

/// Discrete W^{1,q} seminorm of a zero-extended field: forward differences
/// along every axis, including the two closing links into the boundary where
/// the extension is zero,
///
///   |u|_{1,q}^q = sum_d sum_links h^n |(u_+ - u_-) / h|^q .
///
/// For q = 2 this is exactly the quadratic form of the local operator:
/// |u|_{1,2}^2 = h^n u^T A_loc u.  Pre: q >= 1 finite.
double h1_seminorm(const Grid& grid, const std::vector<double>& u, double q);

} // namespace mlnl
