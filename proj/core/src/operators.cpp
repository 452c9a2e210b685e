#include "mlnl/operators.hpp"

#include "mlnl/fractional_kernel.hpp"
#include "mlnl/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mlnl {

namespace {

// Flat-index strides per axis (first axis slowest, matching Grid::flatten).
std::array<std::int64_t, 3> axis_strides(const Grid& g) {
    std::array<std::int64_t, 3> stride{0, 0, 0};
    const int npa = g.nodes_per_axis();
    std::int64_t s = 1;
    for (int d = g.dim - 1; d >= 0; --d) {
        stride[static_cast<std::size_t>(d)] = s;
        s *= npa;
    }
    return stride;
}

} // namespace

const Eigen::MatrixXd& OperatorMatrix::matrix() const {
    if (!dense_)
        throw std::logic_error("OperatorMatrix: no explicit matrix on the matrix-free path");
    return dense_matrix_;
}

void OperatorMatrix::apply_local(const Field& u, Field& out, bool accumulate) const {
    const int npa = grid_.nodes_per_axis();
    const double inv_h2 = 1.0 / (grid_.spacing * grid_.spacing);
    const auto stride = axis_strides(grid_);
    const int dim = grid_.dim;
    parallel_for(grid_.node_count(), [&](std::int64_t i) {
        const std::array<int, 3> idx = grid_.unflatten(i);
        double v = 2.0 * dim * u[static_cast<std::size_t>(i)];
        for (int d = 0; d < dim; ++d) {
            if (idx[static_cast<std::size_t>(d)] > 1)
                v -= u[static_cast<std::size_t>(i - stride[static_cast<std::size_t>(d)])];
            if (idx[static_cast<std::size_t>(d)] < npa)
                v -= u[static_cast<std::size_t>(i + stride[static_cast<std::size_t>(d)])];
        }
        v *= inv_h2;
        if (accumulate)
            out[static_cast<std::size_t>(i)] += v;
        else
            out[static_cast<std::size_t>(i)] = v;
    });
}

void OperatorMatrix::apply_fractional(const Field& u, Field& out, bool accumulate) const {
    const KernelWeights& w = *weights_;
    const double c = normalization_;
    const std::int64_t count = grid_.node_count();
    parallel_for(count, [&](std::int64_t i) {
        const std::array<int, 3> idx = grid_.unflatten(i);
        double weight_sum = 0.0;
        double weighted_u = 0.0;
        for (std::int64_t j = 0; j < count; ++j) {
            if (j == i)
                continue;
            const std::array<int, 3> jdx = grid_.unflatten(j);
            const std::array<int, 3> off{jdx[0] - idx[0], jdx[1] - idx[1], jdx[2] - idx[2]};
            const double wij = w.pair_weight(off);
            weight_sum += wij;
            weighted_u += wij * u[static_cast<std::size_t>(j)];
        }
        const double v =
            c * ((weight_sum + w.exterior_tail(i)) * u[static_cast<std::size_t>(i)] - weighted_u);
        if (accumulate)
            out[static_cast<std::size_t>(i)] += v;
        else
            out[static_cast<std::size_t>(i)] = v;
    });
}

void OperatorMatrix::apply(const Field& u, Field& out) const {
    const std::int64_t count = grid_.node_count();
    if (static_cast<std::int64_t>(u.size()) != count)
        throw std::invalid_argument("OperatorMatrix::apply: field size does not match the grid");
    out.resize(u.size());
    if (dense_) {
        Eigen::Map<const Eigen::VectorXd> uv(u.data(), static_cast<Eigen::Index>(u.size()));
        Eigen::Map<Eigen::VectorXd> ov(out.data(), static_cast<Eigen::Index>(out.size()));
        ov.noalias() = dense_matrix_ * uv;
        return;
    }
    if (kind_ == Kind::local) {
        apply_local(u, out, false);
    } else if (kind_ == Kind::fractional) {
        apply_fractional(u, out, false);
    } else {
        apply_fractional(u, out, false);
        apply_local(u, out, true);
    }
}

Field OperatorMatrix::apply(const Field& u) const {
    Field out;
    apply(u, out);
    return out;
}

OperatorDiagnostics OperatorMatrix::diagnostics() const {
    const Eigen::MatrixXd& A = matrix();
    OperatorDiagnostics d;
    const Eigen::Index m = A.rows();
    d.min_diagonal = A(0, 0);
    d.min_row_sum = A.row(0).sum();
    for (Eigen::Index i = 0; i < m; ++i) {
        d.min_diagonal = std::min(d.min_diagonal, A(i, i));
        d.min_row_sum = std::min(d.min_row_sum, A.row(i).sum());
        for (Eigen::Index j = 0; j < m; ++j) {
            d.max_abs_entry = std::max(d.max_abs_entry, std::abs(A(i, j)));
            if (j > i)
                d.symmetry_defect = std::max(d.symmetry_defect, std::abs(A(i, j) - A(j, i)));
            if (j != i)
                d.max_positive_offdiag = std::max(d.max_positive_offdiag, A(i, j));
        }
    }
    d.max_positive_offdiag = std::max(0.0, d.max_positive_offdiag);
    return d;
}

OperatorMatrix assemble_local_laplacian(const Grid& grid, std::int64_t dense_limit) {
    OperatorMatrix op;
    op.grid_ = grid;
    op.kind_ = OperatorMatrix::Kind::local;
    const std::int64_t count = grid.node_count();
    op.dense_ = count <= dense_limit;
    if (op.dense_) {
        const Eigen::Index m = static_cast<Eigen::Index>(count);
        op.dense_matrix_ = Eigen::MatrixXd::Zero(m, m);
        const double inv_h2 = 1.0 / (grid.spacing * grid.spacing);
        const int npa = grid.nodes_per_axis();
        const auto stride = axis_strides(grid);
        for (std::int64_t i = 0; i < count; ++i) {
            const std::array<int, 3> idx = grid.unflatten(i);
            op.dense_matrix_(i, i) = 2.0 * grid.dim * inv_h2;
            for (int d = 0; d < grid.dim; ++d) {
                if (idx[static_cast<std::size_t>(d)] > 1)
                    op.dense_matrix_(i, i - stride[static_cast<std::size_t>(d)]) = -inv_h2;
                if (idx[static_cast<std::size_t>(d)] < npa)
                    op.dense_matrix_(i, i + stride[static_cast<std::size_t>(d)]) = -inv_h2;
            }
        }
    }
    return op;
}

namespace {

void fill_dense_fractional(const Grid& grid, const KernelWeights& w, double c,
                           Eigen::MatrixXd& A) {
    const std::int64_t count = grid.node_count();
    const Eigen::Index m = static_cast<Eigen::Index>(count);
    A = Eigen::MatrixXd::Zero(m, m);
    for (std::int64_t i = 0; i < count; ++i) {
        const std::array<int, 3> idx = grid.unflatten(i);
        double weight_sum = 0.0;
        for (std::int64_t j = 0; j < count; ++j) {
            if (j == i)
                continue;
            const std::array<int, 3> jdx = grid.unflatten(j);
            const std::array<int, 3> off{jdx[0] - idx[0], jdx[1] - idx[1], jdx[2] - idx[2]};
            const double wij = w.pair_weight(off);
            weight_sum += wij;
            A(i, j) = -c * wij;
        }
        A(i, i) = c * (weight_sum + w.exterior_tail(i));
    }
}

} // namespace

OperatorMatrix assemble_fractional_laplacian(const Grid& grid, double s,
                                             std::int64_t dense_limit) {
    OperatorMatrix op;
    op.grid_ = grid;
    op.kind_ = OperatorMatrix::Kind::fractional;
    op.s_ = s;
    op.normalization_ = normalization_constant(grid.dim, s);
    op.weights_ = std::make_shared<const KernelWeights>(grid, s);
    op.dense_ = grid.node_count() <= dense_limit;
    if (op.dense_)
        fill_dense_fractional(grid, *op.weights_, op.normalization_, op.dense_matrix_);
    return op;
}

OperatorMatrix assemble_mixed_operator(const Grid& grid, double s,
                                       std::int64_t dense_limit) {
    OperatorMatrix op;
    op.grid_ = grid;
    op.kind_ = OperatorMatrix::Kind::mixed;
    op.s_ = s;
    op.normalization_ = normalization_constant(grid.dim, s);
    op.weights_ = std::make_shared<const KernelWeights>(grid, s);
    op.dense_ = grid.node_count() <= dense_limit;
    if (op.dense_) {
        fill_dense_fractional(grid, *op.weights_, op.normalization_, op.dense_matrix_);
        const double inv_h2 = 1.0 / (grid.spacing * grid.spacing);
        const int npa = grid.nodes_per_axis();
        const auto stride = axis_strides(grid);
        for (std::int64_t i = 0; i < grid.node_count(); ++i) {
            const std::array<int, 3> idx = grid.unflatten(i);
            op.dense_matrix_(i, i) += 2.0 * grid.dim * inv_h2;
            for (int d = 0; d < grid.dim; ++d) {
                if (idx[static_cast<std::size_t>(d)] > 1)
                    op.dense_matrix_(i, i - stride[static_cast<std::size_t>(d)]) -= inv_h2;
                if (idx[static_cast<std::size_t>(d)] < npa)
                    op.dense_matrix_(i, i + stride[static_cast<std::size_t>(d)]) -= inv_h2;
            }
        }
    }
    return op;
}

Field apply_operator(const OperatorMatrix& op, const Field& u) { return op.apply(u); }

} // namespace mlnl
