#include "mlnl/elliptic.hpp"

#include "mlnl/linear_solver.hpp"
#include "mlnl/singular_source.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mlnl {

namespace {

/// One Newton descent to the root of F(w) = A w - c (w + a)^{-gamma}.
Field newton_sweeps(const OperatorMatrix& op, const ShiftedSolver& solver, const Field& c,
                    double a, double gamma, Field w, double successive_tol, int max_sweeps) {
    const std::size_t m = w.size();
    Field Aw(m), neg_F(m), shift(m), delta(m);
    // Increments grow geometrically while the iterate climbs from the zero
    // subsolution -- that is the normal approach phase, not divergence -- so
    // the runaway guard only counts growth beyond a blow-up scale.
    const double blowup_scale = 1e3 * (1.0 + max_abs(c));
    double prev_increment = std::numeric_limits<double>::infinity();
    int growing = 0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        op.apply(w, Aw);
        for (std::size_t i = 0; i < m; ++i) {
            const double pw = std::pow(w[i] + a, -gamma);
            neg_F[i] = c[i] * pw - Aw[i];
            shift[i] = gamma * c[i] * pw / (w[i] + a);
        }
        solver.solve(shift, neg_F, delta, 1e-13);
        const double increment = max_abs(delta);
        if (!std::isfinite(increment))
            throw std::runtime_error("solve_elliptic: non-finite increment (divergence)");
        for (std::size_t i = 0; i < m; ++i)
            w[i] = std::max(w[i] + delta[i], 0.0);
        if (increment <= successive_tol)
            return w;
        growing = (increment > prev_increment && increment > blowup_scale) ? growing + 1 : 0;
        if (growing >= 10)
            throw std::runtime_error(
                "solve_elliptic: increments grew for 10 consecutive sweeps (divergence)");
        prev_increment = increment;
    }
    throw std::runtime_error("solve_elliptic: no convergence within " +
                             std::to_string(max_sweeps) + " sweeps");
}

} // namespace

SteadyState solve_elliptic(const OperatorMatrix& op, double gamma, const Field& f,
                           const std::vector<int>& k_ladder, EllipticStart start,
                           double successive_tol, int max_sweeps) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("solve_elliptic: exponent must be positive");
    if (f.size() != static_cast<std::size_t>(op.size()))
        throw std::invalid_argument("solve_elliptic: forcing has wrong size");
    for (double v : f)
        if (!(v >= 0.0))
            throw std::invalid_argument("solve_elliptic: forcing must be nonnegative");
    if (k_ladder.empty())
        throw std::invalid_argument("solve_elliptic: empty ladder");
    int prev = 0;
    for (int k : k_ladder) {
        if (k < 1 || k <= prev)
            throw std::invalid_argument("solve_elliptic: ladder must be strictly increasing");
        prev = k;
    }

    const ShiftedSolver solver(op, 0.0, 1.0);
    const std::size_t m = f.size();
    SteadyState state;
    for (int k : k_ladder) {
        Field c(m);
        for (std::size_t i = 0; i < m; ++i)
            c[i] = truncate(f[i], static_cast<double>(k));
        Field w0(m, 0.0);
        if (start == EllipticStart::linear)
            solver.solve({}, c, w0, 1e-13);
        state.w = newton_sweeps(op, solver, c, 1.0 / k, gamma, std::move(w0), successive_tol,
                                max_sweeps);
        state.k_used = k;
    }

    // report the fixed-point residual of the returned level
    Field Aw(m);
    op.apply(state.w, Aw);
    const double a = 1.0 / state.k_used;
    double res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double c = truncate(f[i], static_cast<double>(state.k_used));
        res = std::max(res, std::abs(Aw[i] - c * std::pow(state.w[i] + a, -gamma)));
    }
    state.residual = res;
    return state;
}

SteadyState solve_elliptic(const Grid& grid, double s, double gamma, const Field& f,
                           const std::vector<int>& k_ladder, EllipticStart start,
                           double successive_tol, int max_sweeps) {
    const OperatorMatrix op = assemble_mixed_operator(grid, s);
    return solve_elliptic(op, gamma, f, k_ladder, start, successive_tol, max_sweeps);
}

Field reflect(const Grid& grid, const Field& u) {
    if (u.size() != static_cast<std::size_t>(grid.node_count()))
        throw std::invalid_argument("reflect: field has wrong size");
    Field out(u.size());
    const int nodes = grid.nodes_per_axis();
    for (std::int64_t flat = 0; flat < grid.node_count(); ++flat) {
        std::array<int, 3> idx = grid.unflatten(flat);
        for (int d = 0; d < grid.dim; ++d)
            idx[static_cast<std::size_t>(d)] = nodes + 1 - idx[static_cast<std::size_t>(d)];
        out[static_cast<std::size_t>(grid.flatten(idx))] = u[static_cast<std::size_t>(flat)];
    }
    return out;
}

} // namespace mlnl
