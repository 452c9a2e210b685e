#pragma once

#include "mlnl/field.hpp"
#include "mlnl/operators.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace mlnl {

struct SolveStats {
    int iterations = 0;
    double rel_residual = 0.0;
};

/**
 * Solver for systems (alpha I + beta A + diag(d)) x = b where A is one of the
 * assembled operators and d >= 0 varies between calls (the per-iterate diagonal
 * of an implicit singular step).
 *
 * The fixed part alpha I + beta A is factored once (dense Cholesky when the
 * operator carries its dense matrix, Jacobi otherwise) and reused as the
 * preconditioner for conjugate gradients on the shifted system.  With d = 0
 * the preconditioner is exact and CG converges in one step, so base resolvent
 * solves and shifted solves share a single code path.
 *
 * Dot products accumulate serially in index order, so results are bit-stable
 * across thread counts.
 */
class ShiftedSolver {
public:
    ShiftedSolver(const OperatorMatrix& op, double identity_scale, double operator_scale);

    /// Solves (alpha I + beta A + diag(shift)) x = rhs to a relative residual.
    /// `shift` must be componentwise nonnegative (it is a convexity term);
    /// pass an empty field for no shift.  Throws on stagnation.
    SolveStats solve(const Field& shift, const Field& rhs, Field& x, double rel_tol = 1e-11,
                     int max_iterations = 400) const;

    double identity_scale() const { return alpha_; }
    double operator_scale() const { return beta_; }
    const OperatorMatrix& op() const { return *op_; }

private:
    void apply_system(const Field& shift, const Field& x, Field& out) const;
    void apply_preconditioner(const Field& r, Field& z) const;

    const OperatorMatrix* op_;
    double alpha_;
    double beta_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Field jacobi_inverse_; // matrix-free fallback preconditioner
};

} // namespace mlnl
