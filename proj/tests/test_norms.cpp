#include "mlnl/norms.hpp"

#include "mlnl/grid.hpp"
#include "mlnl/operators.hpp"
#include "mlnl/quadrature_oracle.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace mlnl;

namespace {

Trajectory make_traj(std::vector<std::vector<double>> fields)
{
    Trajectory t;
    t.fields = std::move(fields);
    return t;
}

Trajectory random_traj(const Grid& grid, std::size_t slices, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Trajectory t;
    t.fields.resize(slices);
    for (auto& u : t.fields) {
        u.resize(static_cast<std::size_t>(grid.node_count()));
        for (auto& v : u)
            v = dist(rng);
    }
    return t;
}

double inner(const std::vector<double>& a, const std::vector<double>& b)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

} // namespace

TEST_SUITE_BEGIN("norms");

TEST_CASE("space-time norm of a constant field is c times the measure root")
{
    const Grid grid = make_grid(1, 8);
    const double tau = 0.25; // four steps cover [0, 1]
    Trajectory traj = make_traj(std::vector<std::vector<double>>(
        5, std::vector<double>(static_cast<std::size_t>(grid.node_count()), 1.3)));

    const double measure = 0.875; // 7 interior cells of width 1/8, times T = 1
    for (double p : {1.0, 2.0, 3.0})
        CHECK(lp_space_time(grid, tau, traj, p) ==
              doctest::Approx(1.3 * std::pow(measure, 1.0 / p)).epsilon(1e-13));
    CHECK(lp_space_time(grid, tau, traj, sup_exponent) == doctest::Approx(1.3));
}

TEST_CASE("steady sine profile reproduces the analytic L2 value")
{
    // The lattice sum of sin^2(pi i/N) is exactly N/2, so the discrete value
    // is sqrt(1/2) to rounding, far inside the 1% the analytic target asks.
    const Grid grid = make_grid(1, 64);
    std::vector<double> slice(static_cast<std::size_t>(grid.node_count()));
    for (std::size_t i = 0; i < slice.size(); ++i)
        slice[i] = std::sin(std::acos(-1.0) * grid.coordinates(static_cast<std::int64_t>(i))[0]);
    Trajectory traj = make_traj({slice, slice, slice}); // steady over [0, 1]
    CHECK(lp_space_time(grid, 0.5, traj, 2.0) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("finite exponents exclude the initial slice, sup includes it")
{
    const Grid grid = make_grid(1, 8);
    const auto nodes = static_cast<std::size_t>(grid.node_count());
    Trajectory traj = make_traj({std::vector<double>(nodes, 5.0),
                                 std::vector<double>(nodes, 1.0),
                                 std::vector<double>(nodes, 1.0)});
    CHECK(lp_space_time(grid, 0.5, traj, 1.0) == doctest::Approx(0.875).epsilon(1e-13));
    CHECK(lp_space_time(grid, 0.5, traj, sup_exponent) == doctest::Approx(5.0));
    CHECK(bochner_norm(grid, 0.5, traj, sup_exponent, 2.0) ==
          doctest::Approx(5.0 * std::sqrt(0.875)).epsilon(1e-13));
}

TEST_CASE("arguments outside the contract are rejected")
{
    const Grid grid = make_grid(1, 8);
    Trajectory traj = random_traj(grid, 3, 11u);
    CHECK_THROWS_AS(lp_space_time(grid, 0.1, traj, 0.99), std::invalid_argument);
    CHECK_THROWS_AS(lp_space_time(grid, 0.0, traj, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(bochner_norm(grid, 0.1, traj, 2.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(bochner_norm(grid, -0.1, traj, 2.0, 2.0), std::invalid_argument);

    Trajectory empty;
    CHECK_THROWS_AS(lp_space_time(grid, 0.1, empty, 2.0), std::invalid_argument);
    Trajectory ragged = random_traj(grid, 2, 12u);
    ragged.fields[1].pop_back();
    CHECK_THROWS_AS(lp_space_time(grid, 0.1, ragged, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(bochner_norm(grid, 0.1, ragged, 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("matching time and space exponents collapse to the plain norm")
{
    const Grid grid = make_grid(1, 16);
    Trajectory traj = random_traj(grid, 4, 21u);
    const double tau = 0.125;
    for (double p : {1.0, 1.7, 2.0, 2.3}) {
        const double a = lp_space_time(grid, tau, traj, p);
        const double b = bochner_norm(grid, tau, traj, p, p);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, a));
    }
    CHECK(bochner_norm(grid, tau, traj, sup_exponent, sup_exponent) ==
          doctest::Approx(lp_space_time(grid, tau, traj, sup_exponent)).epsilon(1e-14));
}

TEST_CASE("sup-in-time of the spatial L2 matches the per-slice maximum")
{
    const Grid grid = make_grid(1, 16);
    Trajectory traj = random_traj(grid, 5, 31u);
    const double hn = grid.spacing;
    double expect = 0.0;
    for (const auto& u : traj.fields)
        expect = std::max(expect, std::sqrt(hn * inner(u, u)));
    CHECK(bochner_norm(grid, 0.1, traj, sup_exponent, 2.0) ==
          doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("separable fields factor into a time norm times a space norm")
{
    const Grid grid = make_grid(1, 4); // three interior nodes
    const std::vector<double> b = {0.3, 1.1, 0.7};
    const std::vector<double> a = {0.9, 0.5, 2.0, 1.25}; // slice 0 unused
    const double tau = 0.1, r = 3.0, q = 2.0;

    Trajectory traj;
    for (double am : a) {
        std::vector<double> slice(b.size());
        for (std::size_t i = 0; i < b.size(); ++i)
            slice[i] = am * b[i];
        traj.fields.push_back(slice);
    }

    double time_part = 0.0;
    for (std::size_t m = 1; m < a.size(); ++m)
        time_part += tau * std::pow(a[m], r);
    time_part = std::pow(time_part, 1.0 / r);
    double space_part = 0.0;
    for (double bi : b)
        space_part += grid.spacing * std::pow(bi, q);
    space_part = std::pow(space_part, 1.0 / q);

    CHECK(bochner_norm(grid, tau, traj, r, q) ==
          doctest::Approx(time_part * space_part).epsilon(1e-13));
}

TEST_CASE("space-time norms are homogeneous and monotone under domination")
{
    const Grid grid = make_grid(1, 12);
    Trajectory u = random_traj(grid, 4, 41u);
    Trajectory v = u;  // scaled copy
    Trajectory w = u;  // dominating copy
    for (auto& slice : v.fields)
        for (auto& x : slice)
            x *= 2.0;
    for (auto& slice : w.fields)
        for (auto& x : slice)
            x = std::abs(x) + 0.1;

    const double tau = 0.05;
    for (double p : {1.0, 2.5, sup_exponent}) {
        CHECK(lp_space_time(grid, tau, v, p) ==
              doctest::Approx(2.0 * lp_space_time(grid, tau, u, p)).epsilon(1e-12));
        CHECK(lp_space_time(grid, tau, u, p) <= lp_space_time(grid, tau, w, p) + 1e-12);
    }
    CHECK(bochner_norm(grid, tau, v, 3.0, 1.5) ==
          doctest::Approx(2.0 * bochner_norm(grid, tau, u, 3.0, 1.5)).epsilon(1e-12));
    CHECK(bochner_norm(grid, tau, u, 3.0, 1.5) <=
          bochner_norm(grid, tau, w, 3.0, 1.5) + 1e-12);
}

TEST_CASE("fractional seminorm of zero vanishes and scales homogeneously")
{
    const Grid grid = make_grid(1, 10);
    const std::vector<double> zero(static_cast<std::size_t>(grid.node_count()), 0.0);
    CHECK(gagliardo_seminorm(grid, zero, 0.5, 1.5) == 0.0);

    std::mt19937 rng(51u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> u(zero.size());
    for (auto& v : u)
        v = dist(rng);
    std::vector<double> twice = u;
    for (auto& v : twice)
        v *= 2.0;
    const double one = gagliardo_seminorm(grid, u, 0.5, 1.5);
    CHECK(gagliardo_seminorm(grid, twice, 0.5, 1.5) ==
          doctest::Approx(2.0 * one).epsilon(1e-12));
    CHECK(one > 0.0);

    std::vector<double> bad(u.size() - 1, 1.0);
    CHECK_THROWS_AS(gagliardo_seminorm(grid, bad, 0.5, 1.5), std::invalid_argument);
}

TEST_CASE("quadratic seminorm matches the operator bilinear form")
{
    // Same weight table on both routes, so the identity
    // seminorm^2 = (2/c) h^n u^T A u is exact linear algebra.
    for (auto [dim, cells, s] : {std::tuple<int, int, double>{1, 24, 0.6},
                                 std::tuple<int, int, double>{2, 8, 0.75}}) {
        const Grid grid = make_grid(dim, cells);
        const OperatorMatrix op = assemble_fractional_laplacian(grid, s);
        std::mt19937 rng(61u + static_cast<unsigned>(dim));
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> u(static_cast<std::size_t>(grid.node_count()));
        for (auto& v : u)
            v = dist(rng);

        const double sem = gagliardo_seminorm(grid, u, s, 2.0);
        const double quad = 2.0 / op.normalization() * std::pow(grid.spacing, grid.dim) *
                            inner(u, op.apply(u));
        CHECK(std::abs(sem * sem - quad) <= 1e-10 * std::max(1.0, std::abs(quad)));
    }
}

TEST_CASE("one-cell indicator reduces to the exterior kernel mass")
{
    // For u = indicator of one node, every pair term sees |u_i - u_j| = 1 and
    // the tail sees |u_i| = 1, so [u]^q = 2 h^n (sum_j W_ij + kappa_i).  With
    // the raw table (no near-diagonal correction) that row sum is exactly the
    // kernel mass outside one cell, which the quadrature oracle integrates
    // independently.
    const Grid grid = make_grid(1, 8);
    std::vector<double> e(static_cast<std::size_t>(grid.node_count()), 0.0);
    e[3] = 1.0;

    for (double q : {2.0, 1.5}) {
        const double s = 0.6;
        KernelWeightOptions raw;
        raw.q = q;
        raw.curvature_correction = false;
        const KernelWeights table(grid, s, raw);
        const double sem = gagliardo_seminorm(table, e);
        const double mass = kernel_mass_outside_cell(1, grid.spacing, 1.0 + q * s);
        const double expect = std::pow(2.0 * grid.spacing * mass, 1.0 / q);
        CHECK(sem == doctest::Approx(expect).epsilon(1e-9));
    }

    // The corrected table shifts mass between near pairs and tails but keeps
    // the identity with its own row mass.
    const KernelWeights corrected(grid, 0.6, seminorm_weight_options(0.6, 2.0));
    const double sem = gagliardo_seminorm(corrected, e);
    CHECK(sem * sem ==
          doctest::Approx(2.0 * grid.spacing * corrected.row_mass(3)).epsilon(1e-12));
}

TEST_CASE("seminorm weight options enable the correction only when usable")
{
    CHECK(seminorm_weight_options(0.5, 2.0).curvature_correction);
    CHECK(seminorm_weight_options(0.9, 2.0).curvature_correction);
    CHECK_FALSE(seminorm_weight_options(0.75, 3.0).curvature_correction); // qs = 2.25
    CHECK_FALSE(seminorm_weight_options(0.5, 4.0).curvature_correction);  // qs = 2
    CHECK(seminorm_weight_options(0.5, 3.0).q == doctest::Approx(3.0));

    // Convenience overload and explicit table agree bit-for-bit.
    const Grid grid = make_grid(1, 8);
    std::vector<double> u(static_cast<std::size_t>(grid.node_count()), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = std::sin(1.0 + static_cast<double>(i));
    const KernelWeights table(grid, 0.7, seminorm_weight_options(0.7, 1.5));
    CHECK(gagliardo_seminorm(grid, u, 0.7, 1.5) == gagliardo_seminorm(table, u));
}

TEST_CASE("gradient seminorm of the clamped ramp has the hand value")
{
    // Five nodes of u = x on a grid of six cells, zero outside: five links of
    // slope 1 and the closing link of slope -5, so the square sum is
    // (5 + 25)/6 and the cube sum is (5 + 125)/6.
    const Grid grid = make_grid(1, 6);
    std::vector<double> u(5);
    for (std::size_t i = 0; i < 5; ++i)
        u[i] = static_cast<double>(i + 1) / 6.0;
    CHECK(h1_seminorm(grid, u, 2.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-13));
    CHECK(h1_seminorm(grid, u, 3.0) ==
          doctest::Approx(std::cbrt(130.0 / 6.0)).epsilon(1e-13));
}

TEST_CASE("gradient seminorm vanishes at zero and is homogeneous")
{
    const Grid grid = make_grid(2, 8);
    const auto nodes = static_cast<std::size_t>(grid.node_count());
    CHECK(h1_seminorm(grid, std::vector<double>(nodes, 0.0), 1.5) == 0.0);

    std::mt19937 rng(71u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> u(nodes);
    for (auto& v : u)
        v = dist(rng);
    std::vector<double> twice = u;
    for (auto& v : twice)
        v *= 2.0;
    CHECK(h1_seminorm(grid, twice, 1.5) ==
          doctest::Approx(2.0 * h1_seminorm(grid, u, 1.5)).epsilon(1e-12));

    CHECK_THROWS_AS(h1_seminorm(grid, u, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(h1_seminorm(grid, u, sup_exponent), std::invalid_argument);
    CHECK_THROWS_AS(h1_seminorm(grid, std::vector<double>(nodes - 1, 1.0), 2.0),
                    std::invalid_argument);
}

TEST_CASE("quadratic gradient seminorm matches the local bilinear form")
{
    for (auto [dim, cells] : {std::pair<int, int>{1, 16}, std::pair<int, int>{2, 8}}) {
        const Grid grid = make_grid(dim, cells);
        const OperatorMatrix op = assemble_local_laplacian(grid);
        std::mt19937 rng(81u + static_cast<unsigned>(dim));
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> u(static_cast<std::size_t>(grid.node_count()));
        for (auto& v : u)
            v = dist(rng);
        const double sem = h1_seminorm(grid, u, 2.0);
        const double quad = std::pow(grid.spacing, grid.dim) * inner(u, op.apply(u));
        CHECK(std::abs(sem * sem - quad) <= 1e-12 * std::max(1.0, std::abs(quad)));
    }
}

TEST_SUITE_END();
