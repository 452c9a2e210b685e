#include "mlnl/linear_solver.hpp"

#include "mlnl/grid.hpp"
#include "mlnl/operators.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace mlnl;

namespace {

Field random_field(std::int64_t size, std::uint64_t seed, double lo, double hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Field f(static_cast<std::size_t>(size));
    for (double& v : f) v = dist(rng);
    return f;
}

// residual of (alpha I + beta A + diag(d)) x = b relative to |b|
double system_residual(const OperatorMatrix& op, double alpha, double beta, const Field& shift,
                       const Field& x, const Field& b) {
    Field ax = op.apply(x);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = shift.empty() ? 0.0 : shift[i];
        const double r = alpha * x[i] + beta * ax[i] + d * x[i] - b[i];
        num += r * r;
        den += b[i] * b[i];
    }
    return std::sqrt(num) / std::sqrt(den);
}

} // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("unshifted resolvent solve converges in one preconditioned step") {
    const Grid g = make_grid(1, 16);
    const OperatorMatrix op = assemble_mixed_operator(g, 0.5);
    const ShiftedSolver solver(op, 1.0, 0.1);

    const Field b = random_field(g.node_count(), 11, -1.0, 2.0);
    Field x;
    const SolveStats stats = solver.solve({}, b, x);
    CHECK(stats.iterations == 1);
    CHECK(system_residual(op, 1.0, 0.1, {}, x, b) <= 1e-11);
}

TEST_CASE("diagonal shifts solve to the requested residual") {
    const Grid g = make_grid(1, 16);
    const OperatorMatrix op = assemble_mixed_operator(g, 0.5);
    const ShiftedSolver solver(op, 1.0, 1e-3);

    // shifts spanning tiny to dominant, as the implicit singular step produces
    for (double scale : {1e-6, 1.0, 1e4}) {
        Field d = random_field(g.node_count(), 29, 0.0, scale);
        const Field b = random_field(g.node_count(), 31, 0.5, 1.5);
        Field x;
        const SolveStats stats = solver.solve(d, b, x);
        CHECK(stats.iterations >= 1);
        CHECK(stats.iterations < 400);
        CHECK(system_residual(op, 1.0, 1e-3, d, x, b) <= 1e-10);
    }
}

TEST_CASE("matrix-free and dense paths agree") {
    const Grid g = make_grid(1, 20);
    const OperatorMatrix dense_op = assemble_mixed_operator(g, 0.25);
    const OperatorMatrix free_op = assemble_mixed_operator(g, 0.25, /*dense_limit=*/0);
    REQUIRE(dense_op.dense());
    REQUIRE(!free_op.dense());

    const ShiftedSolver a(dense_op, 1.0, 0.05);
    const ShiftedSolver b(free_op, 1.0, 0.05);
    const Field rhs = random_field(g.node_count(), 7, 0.0, 1.0);
    const Field d = random_field(g.node_count(), 13, 0.0, 2.0);
    Field xa, xb;
    a.solve(d, rhs, xa, 1e-12);
    b.solve(d, rhs, xb, 1e-12);
    double diff = 0.0;
    for (std::size_t i = 0; i < xa.size(); ++i) diff = std::max(diff, std::abs(xa[i] - xb[i]));
    CHECK(diff <= 1e-10);
}

TEST_CASE("pure operator system (no identity part)") {
    const Grid g = make_grid(2, 8);
    const OperatorMatrix op = assemble_mixed_operator(g, 0.75);
    const ShiftedSolver solver(op, 0.0, 1.0);
    const Field b = random_field(g.node_count(), 3, 0.1, 1.0);
    Field x;
    solver.solve({}, b, x, 1e-12);
    CHECK(system_residual(op, 0.0, 1.0, {}, x, b) <= 1e-11);
}

TEST_CASE("edge cases and argument validation") {
    const Grid g = make_grid(1, 8);
    const OperatorMatrix op = assemble_mixed_operator(g, 0.5);

    CHECK_THROWS_AS(ShiftedSolver(op, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ShiftedSolver(op, -1.0, 1.0), std::invalid_argument);

    const ShiftedSolver solver(op, 1.0, 0.1);
    Field x;

    // zero right side short-circuits to the zero solution
    Field zero(static_cast<std::size_t>(g.node_count()), 0.0);
    const SolveStats stats = solver.solve({}, zero, x);
    CHECK(stats.iterations == 0);
    for (double v : x) CHECK(v == 0.0);

    // negative shift entries are a contract violation
    Field bad(static_cast<std::size_t>(g.node_count()), 0.0);
    bad[2] = -1e-3;
    Field b(static_cast<std::size_t>(g.node_count()), 1.0);
    CHECK_THROWS_AS(solver.solve(bad, b, x), std::invalid_argument);

    // wrong-size shift
    Field short_shift(3, 1.0);
    CHECK_THROWS_AS(solver.solve(short_shift, b, x), std::invalid_argument);
}

TEST_SUITE_END();
