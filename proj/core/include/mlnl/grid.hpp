#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mlnl {

/// Node-centered uniform grid on the open unit box (0,1)^n.
///
/// The domain is discretized with N cells per axis (spacing h = 1/N); the
/// unknowns live on the (N-1)^n interior lattice nodes x = (i_1 h, ..., i_n h),
/// 1 <= i_d <= N-1.  Everything outside the box is exterior: fields are
/// extended by zero there, and the nonlocal operator sees that extension
/// through per-node tail weights.
struct Grid {
    int dim = 1;             // spatial dimension, 1..3
    int cells_per_axis = 4;  // N
    double spacing = 0.25;   // h = 1/N
    // Radius around the domain beyond which the exterior tail of the nonlocal
    // kernel is handled in closed form (reference-quadrature paths integrate a
    // finite shell out to this radius and switch to the radial antiderivative
    // past it).  Defaults to 10 * diam(Omega).
    double exterior_halo_extent = 0.0;

    int nodes_per_axis() const { return cells_per_axis - 1; }

    std::int64_t node_count() const {
        std::int64_t c = 1;
        for (int d = 0; d < dim; ++d) c *= nodes_per_axis();
        return c;
    }

    /// Flat index of a multi-index (components in 1..N-1), row-major with the
    /// first axis slowest.
    std::int64_t flatten(const std::array<int, 3>& idx) const;

    /// Inverse of flatten.
    std::array<int, 3> unflatten(std::int64_t flat) const;

    /// Physical coordinates of a node; unused axes are zero.
    std::array<double, 3> coordinates(std::int64_t flat) const;

    /// Distance from a node to the boundary of the box.
    double boundary_distance(std::int64_t flat) const;

    double diameter() const;
};

/// Build a grid, validating dim in {1,2,3} and N >= 4.
/// Throws std::invalid_argument with a message naming the offending value.
Grid make_grid(int dim, int cells_per_axis);

/// Marks the part of the space-time cylinder within distance delta of the
/// parabolic boundary (the initial slice and the lateral boundary).  The
/// distance of a point (x, t) to the parabolic boundary is
/// min(dist(x, boundary), t), so a pair (node, step) is in the strip exactly
/// when min(dist(x_node, boundary), m * tau) < delta.
struct StripMask {
    double delta = 0.0;
    double tau = 0.0;
    int steps = 0;  // time steps 0..steps inclusive are addressable
    std::vector<double> node_boundary_distance;
    // Set when delta >= 1/2: the spatial slab covers every interior node, so
    // the mask degenerates (still legal, but worth surfacing to the caller).
    std::optional<std::string> warning;

    bool contains(std::int64_t node, int step) const {
        const double dist = std::min(node_boundary_distance[static_cast<std::size_t>(node)],
                                     static_cast<double>(step) * tau);
        return dist < delta;
    }
    bool in_complement(std::int64_t node, int step) const { return !contains(node, step); }
};

/// Build the strip mask for delta >= 0 over steps 0..steps.
/// Throws std::invalid_argument for negative delta/tau or steps < 0.
StripMask make_strip_mask(const Grid& grid, double delta, double tau, int steps);

}  // namespace mlnl
