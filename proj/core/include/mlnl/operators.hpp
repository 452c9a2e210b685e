#pragma once

#include "mlnl/field.hpp"
#include "mlnl/grid.hpp"
#include "mlnl/kernel_weights.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>

namespace mlnl {

/// Grids at or below this node count carry an explicit dense matrix (and can
/// be factorized directly); larger grids stay matrix-free through the weight
/// tables.
inline constexpr std::int64_t dense_node_limit = 4096;

struct OperatorDiagnostics {
    double symmetry_defect = 0.0;      // max |A_ij - A_ji|
    double max_positive_offdiag = 0.0; // max(0, largest off-diagonal)
    double min_diagonal = 0.0;
    double min_row_sum = 0.0;
    double max_abs_entry = 0.0;
};

/**
 * Discretization of -Delta, (-Delta)^s, or their sum on the interior nodes
 * with zero exterior data.
 *
 * The local part is the standard (2n)/h^2 / -1/h^2 second-difference stencil.
 * The fractional part is c(n,s) times the cell-quadrature pair weights plus
 * the per-node exterior tail on the diagonal (see KernelWeights), which makes
 * every instance a symmetric M-matrix with nonnegative row sums — the
 * structure all the discrete comparison arguments rest on.
 */
class OperatorMatrix {
public:
    enum class Kind { local, fractional, mixed };

    const Grid& grid() const { return grid_; }
    Kind kind() const { return kind_; }
    std::optional<double> order_s() const { return s_; }
    std::int64_t size() const { return grid_.node_count(); }

    bool dense() const { return dense_; }
    /// Explicit matrix; throws std::logic_error on the matrix-free path.
    const Eigen::MatrixXd& matrix() const;

    /// A u with zero exterior data; deterministic for any thread count (each
    /// output row is one fixed-order sum produced by one thread).
    void apply(const Field& u, Field& out) const;
    Field apply(const Field& u) const;

    /// Structure report (dense path only): symmetry defect, off-diagonal
    /// signs, diagonal and row-sum bounds.
    OperatorDiagnostics diagnostics() const;

    /// Weight tables of the fractional part (null for the pure local operator).
    const std::shared_ptr<const KernelWeights>& weights() const { return weights_; }
    /// Normalization constant c(n,s) of the fractional part (0 for local).
    double normalization() const { return normalization_; }

    friend OperatorMatrix assemble_local_laplacian(const Grid& grid, std::int64_t dense_limit);
    friend OperatorMatrix assemble_fractional_laplacian(const Grid& grid, double s,
                                                        std::int64_t dense_limit);
    friend OperatorMatrix assemble_mixed_operator(const Grid& grid, double s,
                                                  std::int64_t dense_limit);

private:
    OperatorMatrix() = default;

    void apply_local(const Field& u, Field& out, bool accumulate) const;
    void apply_fractional(const Field& u, Field& out, bool accumulate) const;

    Grid grid_;
    Kind kind_ = Kind::local;
    std::optional<double> s_;
    double normalization_ = 0.0;
    std::shared_ptr<const KernelWeights> weights_;
    bool dense_ = false;
    Eigen::MatrixXd dense_matrix_;
};

/// `dense_limit` caps the explicit-matrix path (tests shrink it to force the
/// matrix-free code; production uses the default budget).
OperatorMatrix assemble_local_laplacian(const Grid& grid, std::int64_t dense_limit = dense_node_limit);
OperatorMatrix assemble_fractional_laplacian(const Grid& grid, double s,
                                             std::int64_t dense_limit = dense_node_limit);
/// -Delta + (-Delta)^s in one matrix (one shared weight table).
OperatorMatrix assemble_mixed_operator(const Grid& grid, double s,
                                       std::int64_t dense_limit = dense_node_limit);

/// Free-function form of OperatorMatrix::apply.
Field apply_operator(const OperatorMatrix& op, const Field& u);

} // namespace mlnl
