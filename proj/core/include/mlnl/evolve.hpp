#pragma once

#include "mlnl/field.hpp"
#include "mlnl/grid.hpp"
#include "mlnl/linear_solver.hpp"
#include "mlnl/operators.hpp"
#include "mlnl/singular_source.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace mlnl {

/// Uniform tolerance for all pointwise ordering assertions (ladder
/// monotonicity, comparison runs, time monotonicity, steady-state domination).
inline constexpr double ordering_tolerance = 1e-10;

enum class Scheme {
    imex_lagged,      // singular term frozen at the previous step; one linear solve
    imex_fixed_point, // singular term at the new level, solved to a fixed point
};

struct ProblemSpec {
    Grid grid;
    double s = 0.5;
    GammaField gamma = GammaField::constant(1.0);
    SourceData source;
    double horizon = 1.0; // T; horizon/tau must be integral within 1e-12
    double tau = 1e-3;
    std::vector<int> k_ladder = {1, 2, 4, 8, 16, 32, 64};
    Scheme scheme = Scheme::imex_fixed_point;
    double fixed_point_tol = 1e-10;
    int fixed_point_max_iters = 50;
    double linear_rel_tol = 1e-11;
};

void validate(const ProblemSpec& spec);

/// Number of time steps M with M * tau == horizon.
int step_count(const ProblemSpec& spec);

struct StepDiagnostics {
    double min_value = 0.0;
    double max_value = 0.0;
    double l2 = 0.0;                // sqrt(h^n sum u_i^2)
    int linear_iterations = 0;      // accumulated over the step's linear solves
    int fixed_point_iterations = 0; // inner iterations (0 for the lagged scheme)
};

struct Trajectory {
    int k = 1;
    std::vector<Field> fields; // steps 0..M; fields[0] = T_k(u0) sampled
    std::vector<StepDiagnostics> diagnostics;
};

/// Outcome of a pointwise ordering check `low <= high + tol`.  For ladder
/// checks k_low/k_high name the offending rung pair; other checks leave them
/// at -1.  worst_excess is max(low - high) over all compared samples, which is
/// negative when the ordering holds strictly.
struct OrderingReport {
    bool ok = true;
    double worst_excess = 0.0;
    std::int64_t node = -1;
    int step = -1;
    int k_low = -1;
    int k_high = -1;
};

struct LadderResult {
    std::vector<Trajectory> rungs;     // one per ladder level, in ladder order
    std::vector<double> increment_sup; // sup |u_{next} - u_this| per adjacent pair
    OrderingReport monotonicity;       // u_k <= u_{k'} over all pairs k < k'
    bool cauchy_checked = false;       // only meaningful for bounded forcing
    OrderingReport cauchy;             // excess over the 1/k - 1/k' envelope

    const Trajectory& limit() const { return rungs.back(); }
};

/**
 * Shared machinery for one (grid, s, tau, scheme) family of runs: the mixed
 * operator and the factored resolvent I + tau A.  Ladder rungs, comparison
 * pairs, and restart chains all reuse the same workspace; the regularization
 * level k is a per-run argument.
 */
class EvolveWorkspace {
public:
    explicit EvolveWorkspace(ProblemSpec spec);
    EvolveWorkspace(ProblemSpec spec, std::shared_ptr<const OperatorMatrix> op);

    const ProblemSpec& spec() const { return spec_; }
    const OperatorMatrix& op() const { return *op_; }
    const ShiftedSolver& resolvent() const { return resolvent_; }
    std::shared_ptr<const OperatorMatrix> shared_op() const { return op_; }

private:
    ProblemSpec spec_;
    std::shared_ptr<const OperatorMatrix> op_;
    ShiftedSolver resolvent_;
};

/// One backward-Euler step u_prev -> u_new at regularization level k.
/// `forcing` is the grid sample of f at the step's target time.  The new state
/// is componentwise nonnegative; the singular term is evaluated per the
/// workspace scheme.  Throws when the inner iteration fails to reach
/// fixed_point_tol within fixed_point_max_iters (use a smaller time step).
Field step(const EvolveWorkspace& ws, const Field& u_prev, const Field& forcing, int k,
           int target_step, StepDiagnostics* diag = nullptr);

/// Full trajectory at level k from T_k(u0).  `initial_override` replaces the
/// sampled initial state (restart chaining); `time_offset` shifts the times at
/// which analytic forcing is sampled.
Trajectory solve_parabolic(const EvolveWorkspace& ws, int k,
                           const Field* initial_override = nullptr, double time_offset = 0.0);

/// Runs every level of spec.k_ladder and cross-checks the rungs: pointwise
/// monotone in k, and, for bounded forcing presets, the Cauchy envelope
/// u_{k'} - u_k <= 1/k - 1/k'.
LadderResult solve_ladder(const EvolveWorkspace& ws);

/// Runs `low` and `high` data at the same level k and checks solution
/// ordering at every step.  The data must be ordered: f_low <= f_high and
/// u0_low <= u0_high at every sample (violations are an argument error).
OrderingReport compare_solutions(const EvolveWorkspace& ws, int k, const SourceData& low,
                                 const SourceData& high);

/// Pointwise u^m <= u^{m+1} across the trajectory.
OrderingReport check_time_monotone(const Trajectory& traj);

/// Per-step discrete energy ledger: at each m,
///   lhs(m) = 1/2 ||u^m||_2^2 + sum_{j<=m} tau h^n (u^j)^T A u^j
///   rhs(m) = sum_{j<=m} tau h^n sum_i f_i^j (u_i^j)^{1-gamma} + 1/2 ||u^0||_2^2
/// with the L2 norms h^n-weighted.  The inequality lhs <= rhs is exact for
/// the fixed-point scheme and holds within a small slack for the lagged one.
struct EnergyReport {
    std::vector<double> lhs;
    std::vector<double> rhs;
    double max_ratio = 0.0; // max over steps of lhs/rhs
};

EnergyReport energy_report(const EvolveWorkspace& ws, const Trajectory& traj,
                           double time_offset = 0.0);

/// True when the data advertises a bounded (L-infinity) forcing class, which
/// is what the ladder's Cauchy envelope requires.
bool bounded_forcing(const SourceData& data);

} // namespace mlnl
