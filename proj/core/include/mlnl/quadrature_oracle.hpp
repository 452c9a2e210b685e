#pragma once

#include <functional>

namespace mlnl {

/// Adaptive Simpson quadrature of f over [a,b] to absolute tolerance
/// `abs_tol`.  Handles integrable endpoint singularities by recursive
/// bisection (depth-limited); meant for reference computations, not inner
/// loops.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 48);

/// The bump (1 - |2x-1|^2)^s_+ on (0,1): the unit-ball profile (1-|z|^2)^s_+
/// composed with z = 2x-1.  Its fractional Laplacian of order s is the
/// constant 2^{2s} * ball_profile_constant(1,s) inside (0,1).
double scaled_ball_profile(double x, double s);

/**
 * Reference evaluator for the one-dimensional fractional Laplacian of a
 * function supported on (0,1) and extended by zero, at interior points.
 *
 * This is the independent route against which the quadrature-table operator
 * is checked.  It deliberately shares no machinery with the table assembly:
 * everything is adaptive Simpson plus one closed-form far-field term.
 *
 *   (-Delta)^s u(x) = c(1,s) [ core + outer + u(x) * exterior mass ]
 *
 * where the principal value is tamed by symmetrization,
 *
 *   core = Integral_0^delta (2u(x) - u(x+t) - u(x-t)) t^{-1-2s} dt,
 *   delta = min(x, 1-x)/2,
 *
 * the outer parts integrate (u(x)-u(y))|x-y|^{-1-2s} over the rest of (0,1),
 * and the exterior mass is computed as a numeric shell out to
 * `shell_extent` plus the closed-form remainder R^{-2s}/s.
 *
 * The profile must be twice differentiable near the evaluation point.  The
 * symmetrized bracket cannot be formed below t ~ 1e-4 without rounding noise
 * swamping it, so the innermost mass is closed by geometric extrapolation;
 * absolute accuracy therefore bottoms out around 1e-9 even when `abs_tol`
 * asks for less.
 */
class FractionalOracle1d {
public:
    FractionalOracle1d(double s, double shell_extent, double abs_tol = 1e-10);

    /// (-Delta)^s u at x in (0,1); u must be continuous on (0,1), zero outside.
    double apply(const std::function<double(double)>& u, double x) const;

    /// Integral of |x-y|^{-1-2s} over y outside (0,1)  (shell + far field).
    double exterior_mass(double x) const;

    double order() const { return s_; }

private:
    double s_;
    double shell_extent_;
    double abs_tol_;
    double normalization_;
};

/**
 * Integral of |x-y|^{-beta} over y in R^n outside the cube of side h centered
 * at x  (beta > n).  Translation invariant, so it is one number per (n,h,beta).
 *
 * Independent reference for the row-mass identity of the weight tables: the
 * pair weights of any node plus its exterior tail must reproduce exactly this
 * number, because the node cells tile space.  Computed by the polar formula
 *
 *   (h/2)^{n-beta}/(beta-n) * Integral_{S^{n-1}} |omega|_inf^{beta-n} domega,
 *
 * with the angular factor evaluated by (nested) adaptive Simpson — no shared
 * machinery with the production tables.
 */
double kernel_mass_outside_cell(int dim, double h, double beta, double abs_tol = 1e-11);

} // namespace mlnl
