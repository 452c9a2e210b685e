#pragma once

#include "mlnl/grid.hpp"

#include <array>
#include <map>
#include <vector>

namespace mlnl {

struct KernelWeightOptions {
    /// Kernel power q in |z|^{-n-qs}; q = 2 is the operator kernel, other
    /// values serve the fractional seminorms.
    double q = 2.0;
    /// Second-moment correction of the unit-offset weights (consistency lift
    /// for the operator; must be off when a table is compared against the raw
    /// cell-integral reference, and is unavailable for qs >= 2).
    bool curvature_correction = true;
};

/**
 * Grid-offset weight tables for the kernel |z|^{-beta}, beta = n + q s.
 *
 * Pair weights are exact cell integrals: for interior nodes i, j at offset
 * D = j - i,
 *
 *   W(D) = Integral over the cell of j of |x_i - y|^{-beta} dy
 *        = h^{n-beta} * Integral_{D + [-1/2,1/2]^n} |z|^{-beta} dz,
 *
 * evaluated by subdivided tensor Gauss–Legendre (machine accurate; the
 * integrand is analytic at distance >= 1/2 from the pole).  The table is
 * indexed by the canonical offset (sorted absolute components), which makes
 * the symmetry W(D) = W(-D) = W(perm D) exact by construction.
 *
 * The exterior tail of node i collects everything outside the union of node
 * cells, i.e. outside the shrunk box P = [h/2, 1-h/2]^n (zero extension):
 *
 *   kappa_i = Integral_{R^n \ P} |x_i - y|^{-beta} dy
 *           = 1/(beta-n) * Sum_faces d_F * Integral_F |y - x_i|^{-beta} dS,
 *
 * the face form being exact for convex P (polar coordinates; every ray exits
 * through exactly one face).  Face integrals use dyadic grading toward the
 * foot point.  kappa is invariant under axis permutation and reflection, so
 * values are cached per canonical node position.
 *
 * With the curvature correction on, the scalar
 *
 *   alpha = h^{n-beta}/2 * [ m2(near box) - Sum_{1<=|D|inf<=2} w(D) D_1^2 ]
 *
 * is added to each unit-offset weight (and once per missing unit neighbor to
 * kappa), which makes the rule exact on quadratics over the near region and
 * removes the leading h^{2-qs} consistency term while preserving symmetry and
 * sign structure.
 */
class KernelWeights {
public:
    KernelWeights(const Grid& grid, double s, KernelWeightOptions opt = {});

    /// W(offset), correction included; zero for the null offset.
    double pair_weight(const std::array<int, 3>& offset) const;

    /// kappa_i for the interior node with flat index `node`, correction included.
    double exterior_tail(std::int64_t node) const;

    /// Sum over all interior j != i of W plus the tail; equals the kernel mass
    /// outside the cell of i independently of i (tiling identity), which the
    /// tests check against adaptive quadrature.
    double row_mass(std::int64_t node) const;

    double order_s() const { return s_; }
    double kernel_power_q() const { return q_; }
    double beta() const { return beta_; }
    const Grid& grid() const { return grid_; }
    bool corrected() const { return correction_on_; }
    /// alpha, the increment carried by each unit-offset weight (0 when off).
    double correction_increment() const { return alpha_; }

private:
    double canonical_weight(std::array<int, 3> offset) const; // scaled w(D), no h factor
    double tail_integral(const std::array<int, 3>& index) const;
    int missing_unit_neighbors(const std::array<int, 3>& index) const;

    Grid grid_;
    double s_ = 0.0;
    double q_ = 2.0;
    double beta_ = 0.0;
    double scale_ = 0.0; // h^{n-beta}
    bool correction_on_ = false;
    double alpha_ = 0.0;
    std::vector<double> table_;        // canonical scaled cell integrals
    std::vector<double> tail_;         // kappa per node (with correction)
};

} // namespace mlnl
