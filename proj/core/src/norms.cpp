#include "mlnl/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "mlnl/parallel.hpp"

namespace mlnl {

namespace {

bool is_sup(double p) { return std::isinf(p) && p > 0; }

void check_exponent(double p, const char* name)
{
    if (is_sup(p))
        return;
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::invalid_argument(std::string(name) + " must be >= 1 or sup_exponent");
}

void check_trajectory(const Grid& grid, double tau, const Trajectory& traj)
{
    if (!(tau > 0.0))
        throw std::invalid_argument("tau must be positive");
    if (traj.fields.empty())
        throw std::invalid_argument("trajectory has no slices");
    for (const auto& u : traj.fields)
        if (u.size() != static_cast<std::size_t>(grid.node_count()))
            throw std::invalid_argument("trajectory slice size does not match grid");
}

double cell_volume(const Grid& grid)
{
    return std::pow(grid.spacing, grid.dim);
}

double sup_abs(const std::vector<double>& u)
{
    double m = 0.0;
    for (double v : u)
        m = std::max(m, std::abs(v));
    return m;
}

/// Spatial L^q of one slice (h^n node weights), or the sup for q = inf.
double slice_norm(double hn, const std::vector<double>& u, double q)
{
    if (is_sup(q))
        return sup_abs(u);
    double acc = 0.0;
    for (double v : u)
        acc += std::pow(std::abs(v), q);
    return std::pow(hn * acc, 1.0 / q);
}

} // namespace

double lp_space_time(const Grid& grid, double tau, const Trajectory& traj, double p)
{
    check_exponent(p, "p");
    check_trajectory(grid, tau, traj);

    if (is_sup(p)) {
        double m = 0.0;
        for (const auto& u : traj.fields)
            m = std::max(m, sup_abs(u));
        return m;
    }

    const double hn = cell_volume(grid);
    double acc = 0.0;
    for (std::size_t m = 1; m < traj.fields.size(); ++m) {
        double slice = 0.0;
        for (double v : traj.fields[m])
            slice += std::pow(std::abs(v), p);
        acc += tau * hn * slice;
    }
    return std::pow(acc, 1.0 / p);
}

double bochner_norm(const Grid& grid, double tau, const Trajectory& traj, double r, double q)
{
    check_exponent(r, "r");
    check_exponent(q, "q");
    check_trajectory(grid, tau, traj);

    const double hn = cell_volume(grid);
    if (is_sup(r)) {
        double m = 0.0;
        for (const auto& u : traj.fields)
            m = std::max(m, slice_norm(hn, u, q));
        return m;
    }

    double acc = 0.0;
    for (std::size_t m = 1; m < traj.fields.size(); ++m)
        acc += tau * std::pow(slice_norm(hn, traj.fields[m], q), r);
    return std::pow(acc, 1.0 / r);
}

KernelWeightOptions seminorm_weight_options(double s, double q)
{
    KernelWeightOptions opt;
    opt.q = q;
    opt.curvature_correction = q * s < 2.0;
    return opt;
}

double gagliardo_seminorm(const KernelWeights& weights, const std::vector<double>& u)
{
    const Grid& grid = weights.grid();
    if (u.size() != static_cast<std::size_t>(grid.node_count()))
        throw std::invalid_argument("field size does not match grid");
    const double q = weights.kernel_power_q();

    // One partial sum per row i: the pair half over j > i plus the exterior
    // tail, each row accumulated in a fixed order so the serial reduction
    // below is bit-identical for any thread count.
    std::vector<double> row(u.size(), 0.0);
    parallel_for(grid.node_count(), [&](std::int64_t i) {
        const auto ii = static_cast<std::size_t>(i);
        const auto mi = grid.unflatten(i);
        double acc = 0.0;
        for (std::size_t j = ii + 1; j < u.size(); ++j) {
            const auto mj = grid.unflatten(static_cast<std::int64_t>(j));
            std::array<int, 3> offset{0, 0, 0};
            for (int d = 0; d < grid.dim; ++d)
                offset[static_cast<std::size_t>(d)] = mj[static_cast<std::size_t>(d)] -
                                                      mi[static_cast<std::size_t>(d)];
            acc += weights.pair_weight(offset) * std::pow(std::abs(u[ii] - u[j]), q);
        }
        acc += weights.exterior_tail(i) * std::pow(std::abs(u[ii]), q);
        row[ii] = acc;
    });

    double total = 0.0;
    for (double v : row)
        total += v;
    return std::pow(2.0 * cell_volume(grid) * total, 1.0 / q);
}

double gagliardo_seminorm(const Grid& grid, const std::vector<double>& u, double s, double q)
{
    KernelWeights weights(grid, s, seminorm_weight_options(s, q));
    return gagliardo_seminorm(weights, u);
}

double h1_seminorm(const Grid& grid, const std::vector<double>& u, double q)
{
    if (!(q >= 1.0) || !std::isfinite(q))
        throw std::invalid_argument("q must be a finite exponent >= 1");
    if (u.size() != static_cast<std::size_t>(grid.node_count()))
        throw std::invalid_argument("field size does not match grid");

    const double h = grid.spacing;
    const int npa = grid.nodes_per_axis();
    double acc = 0.0;
    for (std::int64_t i = 0; i < grid.node_count(); ++i) {
        const auto ii = static_cast<std::size_t>(i);
        const auto mi = grid.unflatten(i);
        for (int d = 0; d < grid.dim; ++d) {
            const auto dd = static_cast<std::size_t>(d);
            // Link from the previous node (or the zero boundary) to node i.
            double prev = 0.0;
            if (mi[dd] > 1) {
                auto mp = mi;
                --mp[dd];
                prev = u[static_cast<std::size_t>(grid.flatten(mp))];
            }
            acc += std::pow(std::abs(u[ii] - prev) / h, q);
            // The closing link into the far boundary belongs to the last node.
            if (mi[dd] == npa)
                acc += std::pow(std::abs(u[ii]) / h, q);
        }
    }
    return std::pow(cell_volume(grid) * acc, 1.0 / q);
}

} // namespace mlnl
