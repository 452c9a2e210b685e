#include "mlnl/grid.hpp"

#include "doctest.h"

#include <stdexcept>

using namespace mlnl;

TEST_SUITE_BEGIN("grid");

TEST_CASE("construction validates its inputs") {
    CHECK_THROWS_AS(make_grid(0, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 3), std::invalid_argument);
    const Grid g = make_grid(2, 8);
    CHECK(g.spacing == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(g.nodes_per_axis() == 7);
    CHECK(g.node_count() == 49);
    CHECK(g.exterior_halo_extent == doctest::Approx(10.0 * g.diameter()));
}

TEST_CASE("flatten and unflatten are inverse, first axis slowest") {
    const Grid g = make_grid(3, 6);
    const int npa = g.nodes_per_axis();
    std::int64_t expected = 0;
    for (int i = 1; i <= npa; ++i)
        for (int j = 1; j <= npa; ++j)
            for (int k = 1; k <= npa; ++k) {
                const std::array<int, 3> idx{i, j, k};
                const std::int64_t flat = g.flatten(idx);
                CHECK(flat == expected);
                CHECK(g.unflatten(flat) == idx);
                ++expected;
            }
    CHECK(expected == g.node_count());
}

TEST_CASE("coordinates and boundary distance") {
    const Grid g = make_grid(1, 8);
    // nodes at h, 2h, ..., 7h
    CHECK(g.coordinates(0)[0] == doctest::Approx(0.125));
    CHECK(g.coordinates(6)[0] == doctest::Approx(0.875));
    CHECK(g.boundary_distance(0) == doctest::Approx(0.125));
    CHECK(g.boundary_distance(3) == doctest::Approx(0.5));
    CHECK(g.boundary_distance(6) == doctest::Approx(0.125));

    const Grid g2 = make_grid(2, 8);
    const std::int64_t corner = g2.flatten({1, 1, 0});
    CHECK(g2.boundary_distance(corner) == doctest::Approx(0.125));
    const std::int64_t center = g2.flatten({4, 4, 0});
    CHECK(g2.boundary_distance(center) == doctest::Approx(0.5));
}

TEST_CASE("strip mask marks the parabolic boundary strip") {
    const Grid g = make_grid(1, 8);
    const double tau = 0.1;
    const StripMask mask = make_strip_mask(g, 0.2, tau, 10);
    CHECK_FALSE(mask.warning.has_value());

    // node 0 sits at distance 0.125 < 0.2: in the strip at every step
    CHECK(mask.contains(0, 5));
    // center node at distance 0.5: inside only while m*tau < 0.2
    const std::int64_t center = 3;
    CHECK(mask.contains(center, 0));
    CHECK(mask.contains(center, 1));
    CHECK_FALSE(mask.contains(center, 2));
    CHECK(mask.in_complement(center, 2));

    // zero-width strip is empty
    const StripMask empty = make_strip_mask(g, 0.0, tau, 10);
    CHECK_FALSE(empty.contains(0, 0));

    // a strip past the midplane covers everything spatially and warns
    const StripMask wide = make_strip_mask(g, 0.6, tau, 10);
    CHECK(wide.warning.has_value());
    CHECK(wide.contains(center, 100));

    CHECK_THROWS_AS(make_strip_mask(g, -1.0, tau, 10), std::invalid_argument);
    CHECK_THROWS_AS(make_strip_mask(g, 0.1, -tau, 10), std::invalid_argument);
    CHECK_THROWS_AS(make_strip_mask(g, 0.1, tau, -1), std::invalid_argument);
}

TEST_SUITE_END();
