#include "mlnl/grid.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace mlnl {

std::int64_t Grid::flatten(const std::array<int, 3>& idx) const {
    const int npa = nodes_per_axis();
    std::int64_t flat = 0;
    for (int d = 0; d < dim; ++d) {
        assert(idx[static_cast<std::size_t>(d)] >= 1 &&
               idx[static_cast<std::size_t>(d)] <= npa);
        flat = flat * npa + (idx[static_cast<std::size_t>(d)] - 1);
    }
    return flat;
}

std::array<int, 3> Grid::unflatten(std::int64_t flat) const {
    const int npa = nodes_per_axis();
    std::array<int, 3> idx{0, 0, 0};
    for (int d = dim - 1; d >= 0; --d) {
        idx[static_cast<std::size_t>(d)] = static_cast<int>(flat % npa) + 1;
        flat /= npa;
    }
    return idx;
}

std::array<double, 3> Grid::coordinates(std::int64_t flat) const {
    const std::array<int, 3> idx = unflatten(flat);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d)
        x[static_cast<std::size_t>(d)] = idx[static_cast<std::size_t>(d)] * spacing;
    return x;
}

double Grid::boundary_distance(std::int64_t flat) const {
    const std::array<double, 3> x = coordinates(flat);
    double dist = 1.0;
    for (int d = 0; d < dim; ++d) {
        const double xd = x[static_cast<std::size_t>(d)];
        dist = std::min(dist, std::min(xd, 1.0 - xd));
    }
    return dist;
}

double Grid::diameter() const { return std::sqrt(static_cast<double>(dim)); }

Grid make_grid(int dim, int cells_per_axis) {
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("grid dimension must be 1, 2, or 3; got " +
                                    std::to_string(dim));
    if (cells_per_axis < 4)
        throw std::invalid_argument("grid needs at least 4 cells per axis; got " +
                                    std::to_string(cells_per_axis));
    Grid g;
    g.dim = dim;
    g.cells_per_axis = cells_per_axis;
    g.spacing = 1.0 / cells_per_axis;
    g.exterior_halo_extent = 10.0 * g.diameter();
    // The spacing must reproduce the unit box exactly at working precision;
    // this can only trip if the representation above ever changes.
    if (std::abs(g.spacing * cells_per_axis - 1.0) > 1e-14)
        throw std::runtime_error("grid spacing does not tile the unit box");
    return g;
}

StripMask make_strip_mask(const Grid& grid, double delta, double tau, int steps) {
    if (delta < 0.0)
        throw std::invalid_argument("strip width must be nonnegative; got " +
                                    std::to_string(delta));
    if (tau < 0.0)
        throw std::invalid_argument("strip mask needs a nonnegative time step; got " +
                                    std::to_string(tau));
    if (steps < 0)
        throw std::invalid_argument("strip mask needs a nonnegative step count; got " +
                                    std::to_string(steps));
    StripMask mask;
    mask.delta = delta;
    mask.tau = tau;
    mask.steps = steps;
    const std::int64_t count = grid.node_count();
    mask.node_boundary_distance.resize(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i)
        mask.node_boundary_distance[static_cast<std::size_t>(i)] = grid.boundary_distance(i);
    if (delta >= 0.5)
        mask.warning = "strip width " + std::to_string(delta) +
                       " reaches the domain midplane: every interior node is within the "
                       "spatial slab";
    return mask;
}

}  // namespace mlnl
