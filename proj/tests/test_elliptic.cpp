#include "mlnl/elliptic.hpp"

#include "mlnl/grid.hpp"
#include "mlnl/operators.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace mlnl;

TEST_SUITE_BEGIN("elliptic");

TEST_CASE("zero forcing gives the zero steady state") {
    const Grid g = make_grid(1, 16);
    const OperatorMatrix op = assemble_mixed_operator(g, 0.5);
    const Field f(static_cast<std::size_t>(g.node_count()), 0.0);
    const SteadyState st = solve_elliptic(op, 1.0, f, {1, 2, 4});
    CHECK(st.k_used == 4);
    CHECK(st.residual == 0.0);
    for (double v : st.w) CHECK(v == 0.0);
}

TEST_CASE("unit forcing: residual, positivity, symmetry, profile shape") {
    const Grid g = make_grid(1, 32);
    const OperatorMatrix op = assemble_mixed_operator(g, 0.5);
    const std::size_t n = static_cast<std::size_t>(g.node_count());
    const Field f(n, 1.0);
    const SteadyState st = solve_elliptic(op, 1.0, f, {1, 2, 4, 8, 16, 32, 64});

    CHECK(st.k_used == 64);
    CHECK(st.residual <= 1e-9);
    CHECK(min_value(st.w) > 0.0);

    // symmetric data: invariance under reflection through the center
    const Field mirrored = reflect(g, st.w);
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        asym = std::max(asym, std::abs(st.w[i] - mirrored[i]));
    CHECK(asym <= 1e-9);

    // unimodal: rises monotonically to the central node
    const std::size_t center = n / 2; // 31 nodes -> node 15 at x = 1/2
    for (std::size_t i = 0; i < center; ++i)
        CHECK(st.w[i + 1] >= st.w[i] - 1e-12);
    for (std::size_t i = 0; i < n; ++i) CHECK(st.w[center] >= st.w[i]);
}

TEST_CASE("ladder levels increase pointwise") {
    const Grid g = make_grid(1, 16);
    const OperatorMatrix op = assemble_mixed_operator(g, 0.5);
    const Field f(static_cast<std::size_t>(g.node_count()), 1.0);
    std::vector<Field> levels;
    for (int k : {1, 2, 4, 8})
        levels.push_back(solve_elliptic(op, 2.0, f, {k}).w);
    for (std::size_t r = 0; r + 1 < levels.size(); ++r)
        CHECK(max_excess(levels[r], levels[r + 1]) <= 1e-10);
}

TEST_CASE("zero and linear starts agree at the top level") {
    const Grid g = make_grid(1, 16);
    const OperatorMatrix op = assemble_mixed_operator(g, 0.5);
    const Field f(static_cast<std::size_t>(g.node_count()), 1.0);
    const std::vector<int> ladder = {1, 2, 4, 8, 16};
    for (double gamma : {1.0, 2.0}) {
        const SteadyState a = solve_elliptic(op, gamma, f, ladder, EllipticStart::zero);
        const SteadyState b = solve_elliptic(op, gamma, f, ladder, EllipticStart::linear);
        double diff = 0.0;
        for (std::size_t i = 0; i < a.w.size(); ++i)
            diff = std::max(diff, std::abs(a.w[i] - b.w[i]));
        CHECK(diff <= 1e-8);
        CHECK(a.residual <= 1e-9);
        CHECK(b.residual <= 1e-9);
    }
}

TEST_CASE("the grid-level convenience overload matches the explicit operator") {
    const Grid g = make_grid(1, 16);
    const OperatorMatrix op = assemble_mixed_operator(g, 0.75);
    const Field f(static_cast<std::size_t>(g.node_count()), 1.0);
    const SteadyState a = solve_elliptic(op, 1.0, f, {1, 4});
    const SteadyState b = solve_elliptic(g, 0.75, 1.0, f, {1, 4});
    for (std::size_t i = 0; i < a.w.size(); ++i)
        CHECK(std::abs(a.w[i] - b.w[i]) <= 1e-14);
}

TEST_CASE("argument validation") {
    const Grid g = make_grid(1, 8);
    const OperatorMatrix op = assemble_mixed_operator(g, 0.5);
    const std::size_t n = static_cast<std::size_t>(g.node_count());
    const Field f(n, 1.0);
    CHECK_THROWS_AS(solve_elliptic(op, 0.0, f, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(solve_elliptic(op, -1.0, f, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(solve_elliptic(op, 1.0, f, {}), std::invalid_argument);
    CHECK_THROWS_AS(solve_elliptic(op, 1.0, f, {4, 2}), std::invalid_argument);
    Field bad = f;
    bad[2] = -0.5;
    CHECK_THROWS_AS(solve_elliptic(op, 1.0, bad, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(solve_elliptic(op, 1.0, Field(3, 1.0), {1, 2}), std::invalid_argument);
}

TEST_CASE("reflection through the center, axis by axis") {
    const Grid g = make_grid(2, 8);
    const std::size_t n = static_cast<std::size_t>(g.node_count());
    Field u(n);
    for (std::int64_t i = 0; i < g.node_count(); ++i) {
        const auto x = g.coordinates(i);
        u[static_cast<std::size_t>(i)] = x[0] + 10.0 * x[1];
    }
    const Field r = reflect(g, u);
    for (std::int64_t i = 0; i < g.node_count(); ++i) {
        const auto x = g.coordinates(i);
        CHECK(r[static_cast<std::size_t>(i)] ==
              doctest::Approx((1.0 - x[0]) + 10.0 * (1.0 - x[1])).epsilon(1e-12));
    }
    const Field rr = reflect(g, r);
    for (std::size_t i = 0; i < n; ++i) CHECK(rr[i] == u[i]);
}

TEST_SUITE_END();
