#include "mlnl/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mlnl {

namespace {

double cell_volume(const Grid& g) { return std::pow(g.spacing, g.dim); }

ProblemSpec validated(ProblemSpec spec) {
    validate(spec);
    return spec;
}

StepDiagnostics field_diagnostics(const Grid& g, const Field& u) {
    StepDiagnostics d;
    d.min_value = min_value(u);
    d.max_value = max_value(u);
    d.l2 = std::sqrt(cell_volume(g) * dot(u, u));
    return d;
}

/// Clamps roundoff-scale negatives to zero; anything beyond roundoff means the
/// monotone structure was violated and is reported as a logic error.
void enforce_nonnegative(Field& u, const char* where) {
    const double slack = 1e-12 * (1.0 + max_abs(u));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < 0.0) {
            if (u[i] < -slack)
                throw std::logic_error(std::string(where) +
                                       ": negative state beyond roundoff at node " +
                                       std::to_string(i) + " (" + std::to_string(u[i]) + ")");
            u[i] = 0.0;
        }
    }
}

Trajectory run_with_source(const EvolveWorkspace& ws, int k, const SourceData& source,
                           const Field* initial_override, double time_offset) {
    const ProblemSpec& spec = ws.spec();
    const int steps = step_count(spec);
    Field u0 = initial_override ? *initial_override : sample_initial(source, spec.grid);
    if (u0.size() != static_cast<std::size_t>(spec.grid.node_count()))
        throw std::invalid_argument("solve_parabolic: initial state has wrong size");
    if (!initial_override) {
        // the level-k problem starts from the truncated data; restart chains
        // hand in an already-evolved state that must pass through unclipped
        for (double& v : u0)
            v = truncate(v, static_cast<double>(k));
    }
    enforce_nonnegative(u0, "solve_parabolic(initial)");

    Trajectory traj;
    traj.k = k;
    traj.fields.reserve(static_cast<std::size_t>(steps) + 1);
    traj.diagnostics.reserve(static_cast<std::size_t>(steps) + 1);
    traj.fields.push_back(std::move(u0));
    traj.diagnostics.push_back(field_diagnostics(spec.grid, traj.fields.back()));

    for (int m = 1; m <= steps; ++m) {
        const double t = time_offset + spec.tau * static_cast<double>(m);
        const Field forcing = sample_forcing(source, spec.grid, m, t);
        StepDiagnostics diag;
        traj.fields.push_back(step(ws, traj.fields.back(), forcing, k, m, &diag));
        traj.diagnostics.push_back(diag);
    }
    return traj;
}

/// Worst pointwise excess of `low` over `high` across two whole trajectories.
void ordering_scan(const Trajectory& low, const Trajectory& high, OrderingReport& report,
                   double envelope = 0.0) {
    for (std::size_t m = 0; m < low.fields.size(); ++m) {
        const Field& a = low.fields[m];
        const Field& b = high.fields[m];
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double excess = a[i] - b[i] - envelope;
            if (excess > report.worst_excess) {
                report.worst_excess = excess;
                report.node = static_cast<std::int64_t>(i);
                report.step = static_cast<int>(m);
                report.k_low = low.k;
                report.k_high = high.k;
            }
        }
    }
}

} // namespace

void validate(const ProblemSpec& spec) {
    if (!(spec.horizon > 0.0))
        throw std::invalid_argument("ProblemSpec: horizon must be positive and finite");
    if (!(spec.tau > 0.0))
        throw std::invalid_argument("ProblemSpec: time step must be positive");
    const double ratio = spec.horizon / spec.tau;
    if (std::abs(ratio - std::round(ratio)) > 1e-12 * std::max(1.0, ratio))
        throw std::invalid_argument("ProblemSpec: horizon/tau must be integral");
    if (spec.k_ladder.empty())
        throw std::invalid_argument("ProblemSpec: empty ladder");
    int prev = 0;
    for (int k : spec.k_ladder) {
        if (k < 1 || k <= prev)
            throw std::invalid_argument("ProblemSpec: ladder must be strictly increasing, >= 1");
        prev = k;
    }
    if (!(spec.fixed_point_tol > 0.0) || spec.fixed_point_max_iters < 1)
        throw std::invalid_argument("ProblemSpec: invalid inner-iteration controls");
    if (!(spec.linear_rel_tol > 0.0))
        throw std::invalid_argument("ProblemSpec: invalid linear tolerance");
}

int step_count(const ProblemSpec& spec) {
    validate(spec);
    return static_cast<int>(std::llround(spec.horizon / spec.tau));
}

EvolveWorkspace::EvolveWorkspace(ProblemSpec spec)
    : EvolveWorkspace(std::move(spec), nullptr) {}

EvolveWorkspace::EvolveWorkspace(ProblemSpec spec, std::shared_ptr<const OperatorMatrix> op)
    : spec_(validated(std::move(spec))),
      op_(op ? std::move(op)
             : std::make_shared<const OperatorMatrix>(
                   assemble_mixed_operator(spec_.grid, spec_.s))),
      resolvent_(*op_, 1.0, spec_.tau) {
    if (op_->grid().node_count() != spec_.grid.node_count() ||
        op_->order_s() != spec_.s || op_->kind() != OperatorMatrix::Kind::mixed)
        throw std::invalid_argument("EvolveWorkspace: operator does not match the problem");
}

Field step(const EvolveWorkspace& ws, const Field& u_prev, const Field& forcing, int k,
           int target_step, StepDiagnostics* diag) {
    const ProblemSpec& spec = ws.spec();
    const std::size_t m = static_cast<std::size_t>(spec.grid.node_count());
    if (u_prev.size() != m || forcing.size() != m)
        throw std::invalid_argument("step: field sizes do not match the grid");
    if (k < 1)
        throw std::invalid_argument("step: level must be >= 1");
    const double tau = spec.tau;
    const double a = 1.0 / static_cast<double>(k);

    Field v;
    int fp_iters = 0;
    int linear_iters = 0;

    if (spec.scheme == Scheme::imex_lagged) {
        const Field g = regularized_rhs(forcing, u_prev, spec.gamma, target_step, k);
        Field rhs(m);
        for (std::size_t i = 0; i < m; ++i)
            rhs[i] = u_prev[i] + tau * g[i];
        const SolveStats stats =
            ws.resolvent().solve({}, rhs, v, spec.linear_rel_tol);
        linear_iters = stats.iterations;
    } else {
        // Implicit singular term: solve F(v) = (I + tau A) v - tau c (v+a)^{-g}
        // - u_prev = 0.  F is componentwise concave with an M-matrix Jacobian,
        // so the Newton iterates from any nonnegative start drop to a
        // subsolution after one sweep and then increase monotonically to the
        // unique root, staying nonnegative throughout; plain substitution
        // would oscillate once tau * g * c * k^{g+1} exceeds 1.
        Field gamma_i(m), c(m);
        for (std::size_t i = 0; i < m; ++i) {
            gamma_i[i] = spec.gamma.at(static_cast<std::int64_t>(i), target_step);
            c[i] = truncate(forcing[i], static_cast<double>(k));
        }
        v = u_prev;
        Field Av(m), neg_F(m), shift(m), delta(m);
        bool converged = false;
        while (fp_iters < spec.fixed_point_max_iters) {
            ws.op().apply(v, Av);
            for (std::size_t i = 0; i < m; ++i) {
                const double pw = std::pow(v[i] + a, -gamma_i[i]);
                neg_F[i] = u_prev[i] + tau * c[i] * pw - v[i] - tau * Av[i];
                shift[i] = tau * gamma_i[i] * c[i] * pw / (v[i] + a);
            }
            const SolveStats stats =
                ws.resolvent().solve(shift, neg_F, delta, spec.linear_rel_tol);
            linear_iters += stats.iterations;
            ++fp_iters;
            for (std::size_t i = 0; i < m; ++i)
                v[i] += delta[i];
            if (max_abs(delta) <= spec.fixed_point_tol) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw std::runtime_error(
                "step: inner iteration did not reach " + std::to_string(spec.fixed_point_tol) +
                " within " + std::to_string(spec.fixed_point_max_iters) +
                " sweeps at step " + std::to_string(target_step) +
                "; use a smaller time step");
    }

    enforce_nonnegative(v, "step");
    if (diag) {
        *diag = field_diagnostics(spec.grid, v);
        diag->linear_iterations = linear_iters;
        diag->fixed_point_iterations = fp_iters;
    }
    return v;
}

Trajectory solve_parabolic(const EvolveWorkspace& ws, int k, const Field* initial_override,
                           double time_offset) {
    return run_with_source(ws, k, ws.spec().source, initial_override, time_offset);
}

LadderResult solve_ladder(const EvolveWorkspace& ws) {
    const ProblemSpec& spec = ws.spec();
    LadderResult result;
    result.rungs.reserve(spec.k_ladder.size());
    for (int k : spec.k_ladder)
        result.rungs.push_back(solve_parabolic(ws, k));

    for (std::size_t r = 0; r + 1 < result.rungs.size(); ++r) {
        double sup = 0.0;
        const Trajectory& lo = result.rungs[r];
        const Trajectory& hi = result.rungs[r + 1];
        for (std::size_t m = 0; m < lo.fields.size(); ++m)
            for (std::size_t i = 0; i < lo.fields[m].size(); ++i)
                sup = std::max(sup, std::abs(hi.fields[m][i] - lo.fields[m][i]));
        result.increment_sup.push_back(sup);
    }

    result.monotonicity.worst_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < result.rungs.size(); ++r)
        for (std::size_t q = r + 1; q < result.rungs.size(); ++q)
            ordering_scan(result.rungs[r], result.rungs[q], result.monotonicity);
    result.monotonicity.ok = result.monotonicity.worst_excess <= ordering_tolerance;

    if (bounded_forcing(spec.source)) {
        result.cauchy_checked = true;
        result.cauchy.worst_excess = -std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < result.rungs.size(); ++r) {
            for (std::size_t q = r + 1; q < result.rungs.size(); ++q) {
                const double envelope = 1.0 / spec.k_ladder[r] - 1.0 / spec.k_ladder[q];
                // the envelope bounds u_{k'} - u_k from above, so scan with
                // the larger level in the "low" slot
                ordering_scan(result.rungs[q], result.rungs[r], result.cauchy, envelope);
            }
        }
        result.cauchy.ok = result.cauchy.worst_excess <= ordering_tolerance;
    }
    return result;
}

OrderingReport compare_solutions(const EvolveWorkspace& ws, int k, const SourceData& low,
                                 const SourceData& high) {
    const ProblemSpec& spec = ws.spec();
    const int steps = step_count(spec);
    const Field u0_low = sample_initial(low, spec.grid);
    const Field u0_high = sample_initial(high, spec.grid);
    if (max_excess(u0_low, u0_high) > 0.0)
        throw std::invalid_argument("compare_solutions: initial data is not ordered");
    for (int m = 1; m <= steps; ++m) {
        const double t = spec.tau * static_cast<double>(m);
        if (max_excess(sample_forcing(low, spec.grid, m, t),
                       sample_forcing(high, spec.grid, m, t)) > 0.0)
            throw std::invalid_argument("compare_solutions: forcing is not ordered at step " +
                                        std::to_string(m));
    }

    const Trajectory t_low = run_with_source(ws, k, low, nullptr, 0.0);
    const Trajectory t_high = run_with_source(ws, k, high, nullptr, 0.0);
    OrderingReport report;
    report.worst_excess = -std::numeric_limits<double>::infinity();
    ordering_scan(t_low, t_high, report);
    report.k_low = report.k_high = k;
    report.ok = report.worst_excess <= ordering_tolerance;
    return report;
}

OrderingReport check_time_monotone(const Trajectory& traj) {
    OrderingReport report;
    report.worst_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m + 1 < traj.fields.size(); ++m) {
        const Field& now = traj.fields[m];
        const Field& next = traj.fields[m + 1];
        for (std::size_t i = 0; i < now.size(); ++i) {
            const double excess = now[i] - next[i];
            if (excess > report.worst_excess) {
                report.worst_excess = excess;
                report.node = static_cast<std::int64_t>(i);
                report.step = static_cast<int>(m);
            }
        }
    }
    report.ok = report.worst_excess <= ordering_tolerance;
    return report;
}

EnergyReport energy_report(const EvolveWorkspace& ws, const Trajectory& traj,
                           double time_offset) {
    const ProblemSpec& spec = ws.spec();
    if (spec.gamma.upper() > 1.0)
        throw std::invalid_argument("energy_report: ledger requires exponents <= 1");
    const double vol = cell_volume(spec.grid);
    const double tau = spec.tau;

    EnergyReport report;
    report.lhs.reserve(traj.fields.size());
    report.rhs.reserve(traj.fields.size());
    const double initial_energy = 0.5 * vol * dot(traj.fields[0], traj.fields[0]);
    double dissipation = 0.0;
    double work = 0.0;
    report.lhs.push_back(initial_energy);
    report.rhs.push_back(initial_energy);
    Field Au(traj.fields[0].size());
    for (std::size_t m = 1; m < traj.fields.size(); ++m) {
        const Field& u = traj.fields[m];
        ws.op().apply(u, Au);
        dissipation += tau * vol * dot(u, Au);
        const double t = time_offset + tau * static_cast<double>(m);
        const Field f = sample_forcing(spec.source, spec.grid, static_cast<int>(m), t);
        double power = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double g = spec.gamma.at(static_cast<std::int64_t>(i), static_cast<int>(m));
            if (u[i] > 0.0)
                power += f[i] * std::pow(u[i], 1.0 - g);
        }
        work += tau * vol * power;
        report.lhs.push_back(0.5 * vol * dot(u, u) + dissipation);
        report.rhs.push_back(work + initial_energy);
    }
    report.max_ratio = 0.0;
    for (std::size_t m = 0; m < report.lhs.size(); ++m) {
        if (report.rhs[m] > 0.0)
            report.max_ratio = std::max(report.max_ratio, report.lhs[m] / report.rhs[m]);
        else if (report.lhs[m] > 0.0)
            report.max_ratio = std::numeric_limits<double>::infinity();
    }
    return report;
}

bool bounded_forcing(const SourceData& data) {
    return data.declared_class == "Linf";
}

} // namespace mlnl
