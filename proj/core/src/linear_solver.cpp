#include "mlnl/linear_solver.hpp"

#include "mlnl/kernel_weights.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mlnl {

namespace {

double serial_dot(const Field& a, const Field& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

} // namespace

ShiftedSolver::ShiftedSolver(const OperatorMatrix& op, double identity_scale,
                             double operator_scale)
    : op_(&op), alpha_(identity_scale), beta_(operator_scale) {
    if (alpha_ < 0.0 || beta_ < 0.0 || alpha_ + beta_ == 0.0)
        throw std::invalid_argument("ShiftedSolver: scales must be nonnegative, not both zero");
    const std::int64_t m = op.size();
    if (op.dense()) {
        Eigen::MatrixXd base = beta_ * op.matrix();
        base.diagonal().array() += alpha_;
        llt_.compute(base);
        if (llt_.info() != Eigen::Success)
            throw std::runtime_error("ShiftedSolver: base matrix is not positive definite");
    } else {
        // Jacobi preconditioner from the analytically known diagonal.
        jacobi_inverse_.resize(static_cast<std::size_t>(m));
        const Grid& g = op.grid();
        const double local_diag =
            2.0 * g.dim / (g.spacing * g.spacing); // per-axis 2/h^2, summed over axes
        for (std::int64_t i = 0; i < m; ++i) {
            double d = alpha_;
            if (op.kind() != OperatorMatrix::Kind::fractional)
                d += beta_ * local_diag;
            if (op.kind() != OperatorMatrix::Kind::local)
                d += beta_ * op.normalization() * op.weights()->row_mass(i);
            jacobi_inverse_[static_cast<std::size_t>(i)] = 1.0 / d;
        }
    }
}

void ShiftedSolver::apply_system(const Field& shift, const Field& x, Field& out) const {
    op_->apply(x, out);
    if (shift.empty()) {
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = alpha_ * x[i] + beta_ * out[i];
    } else {
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = (alpha_ + shift[i]) * x[i] + beta_ * out[i];
    }
}

void ShiftedSolver::apply_preconditioner(const Field& r, Field& z) const {
    if (op_->dense()) {
        Eigen::Map<const Eigen::VectorXd> rv(r.data(), static_cast<Eigen::Index>(r.size()));
        Eigen::Map<Eigen::VectorXd> zv(z.data(), static_cast<Eigen::Index>(z.size()));
        zv = llt_.solve(rv);
    } else {
        for (std::size_t i = 0; i < r.size(); ++i)
            z[i] = jacobi_inverse_[i] * r[i];
    }
}

SolveStats ShiftedSolver::solve(const Field& shift, const Field& rhs, Field& x, double rel_tol,
                                int max_iterations) const {
    const std::size_t m = rhs.size();
    if (m != static_cast<std::size_t>(op_->size()))
        throw std::invalid_argument("ShiftedSolver: right-hand side size mismatch");
    if (!shift.empty() && shift.size() != m)
        throw std::invalid_argument("ShiftedSolver: shift size mismatch");
    for (double d : shift)
        if (!(d >= 0.0))
            throw std::invalid_argument("ShiftedSolver: diagonal shift must be nonnegative");

    x.assign(m, 0.0);
    const double rhs_norm = std::sqrt(serial_dot(rhs, rhs));
    if (rhs_norm == 0.0)
        return {0, 0.0};

    Field r = rhs; // residual of the zero initial guess
    Field z(m), p(m), Ap(m);
    apply_preconditioner(r, z);
    p = z;
    double rz = serial_dot(r, z);
    double res_norm = rhs_norm;

    for (int it = 1; it <= max_iterations; ++it) {
        apply_system(shift, p, Ap);
        const double pAp = serial_dot(p, Ap);
        if (!(pAp > 0.0))
            throw std::runtime_error("ShiftedSolver: system lost positive definiteness");
        const double step = rz / pAp;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] += step * p[i];
            r[i] -= step * Ap[i];
        }
        res_norm = std::sqrt(serial_dot(r, r));
        if (res_norm <= rel_tol * rhs_norm)
            return {it, res_norm / rhs_norm};
        apply_preconditioner(r, z);
        const double rz_next = serial_dot(r, z);
        const double ratio = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < m; ++i)
            p[i] = z[i] + ratio * p[i];
    }
    throw std::runtime_error("ShiftedSolver: no convergence within " +
                             std::to_string(max_iterations) + " iterations (relative residual " +
                             std::to_string(res_norm / rhs_norm) + ")");
}

} // namespace mlnl
