#include "mlnl/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mlnl/elliptic.hpp"
#include "mlnl/evolve.hpp"
#include "mlnl/exponents.hpp"
#include "mlnl/grid.hpp"
#include "mlnl/norms.hpp"
#include "mlnl/operators.hpp"
#include "mlnl/parallel.hpp"
#include "mlnl/quadrature_oracle.hpp"
#include "mlnl/singular_source.hpp"
#include "mlnl/svg_plot.hpp"

namespace mlnl {
namespace {

namespace fs = std::filesystem;

constexpr double pi = 3.14159265358979323846;

double cell_volume(const Grid& grid)
{
    double v = 1.0;
    for (int d = 0; d < grid.dim; ++d)
        v *= grid.spacing;
    return v;
}

double sup_abs(const Field& u)
{
    double m = 0.0;
    for (double v : u)
        m = std::max(m, std::abs(v));
    return m;
}

double sup_gap(const Field& a, const Field& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// max(a_i - b_i): positive when a pokes above b somewhere.
double signed_excess(const Field& a, const Field& b)
{
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, a[i] - b[i]);
    return m;
}

double l2_grid(const Grid& grid, const Field& u)
{
    double acc = 0.0;
    for (double v : u)
        acc += v * v;
    return std::sqrt(cell_volume(grid) * acc);
}

double trajectory_sup(const Trajectory& traj)
{
    double m = 0.0;
    for (const auto& d : traj.diagnostics)
        m = std::max(m, d.max_value);
    return m;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    double xm = 0.0;
    double ym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= static_cast<double>(n);
    ym /= static_cast<double>(n);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (x[i] - xm) * (y[i] - ym);
        den += (x[i] - xm) * (x[i] - xm);
    }
    return num / den;
}

// Distance from an interior point of the unit box to its boundary.
double box_distance(const std::array<double, 3>& x, int dim)
{
    double d = std::numeric_limits<double>::infinity();
    for (int a = 0; a < dim; ++a)
        d = std::min(d, std::min(x[a], 1.0 - x[a]));
    return d;
}

// ---------------------------------------------------------------------------
// Check and artifact bookkeeping shared by every scenario.
// ---------------------------------------------------------------------------

struct CheckList {
    std::vector<CheckVerdict> items;

    void add(const std::string& name, double measured, double threshold,
             const std::string& comparison, const std::string& note = "")
    {
        bool pass = false;
        if (comparison == "<=")
            pass = measured <= threshold;
        else if (comparison == ">=")
            pass = measured >= threshold;
        else if (comparison == ">")
            pass = measured > threshold;
        else if (comparison == "<")
            pass = measured < threshold;
        else
            throw std::logic_error("unknown comparison '" + comparison + "'");
        items.push_back(CheckVerdict{name, pass, measured, threshold, comparison, note});
    }

    void add_le(const std::string& name, double measured, double threshold,
                const std::string& note = "")
    {
        add(name, measured, threshold, "<=", note);
    }
    void add_ge(const std::string& name, double measured, double threshold,
                const std::string& note = "")
    {
        add(name, measured, threshold, ">=", note);
    }
};

struct Workbench {
    fs::path dir;
    bool plots = true;
    std::vector<ArtifactRecord> artifacts;

    explicit Workbench(const ScenarioContext& ctx) : dir(ctx.out_dir)
    {
        fs::create_directories(dir);
        plots = ctx.config.get_bool("output.emit_plots", true);
    }

    void note_file(const std::string& rel, std::int64_t rows = -1)
    {
        artifacts.push_back(ArtifactRecord{
            rel, rows, static_cast<std::int64_t>(fs::file_size(dir / rel))});
    }

    void note_csv(const CsvWriter& w, const std::string& rel) { note_file(rel, w.rows()); }

    void snapshot(const std::string& base, const Grid& grid, const Field& u,
                  const SnapshotInfo& info)
    {
        write_snapshot(dir / base, grid, u, info);
        note_file(base + ".f64");
        note_file(base + ".json");
    }

    void plot(const std::string& rel, const PlotSpec& spec, const std::vector<PlotSeries>& series)
    {
        if (!plots)
            return;
        write_svg_plot(dir / rel, spec, series);
        note_file(rel);
    }
};

// ---------------------------------------------------------------------------
// Config -> problem assembly.
// ---------------------------------------------------------------------------

struct Preset {
    std::function<double(const std::array<double, 3>&, double)> forcing;
    std::function<double(const std::array<double, 3>&)> initial;
    std::string declared;
};

std::vector<std::string> split_colon(const std::string& text)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

double preset_number(const std::string& whole, const std::string& piece)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(piece, &used);
        if (used != piece.size())
            throw std::invalid_argument(piece);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric component '" + piece + "' in data preset '" +
                                    whole + "'");
    }
}

// Data presets shared by physics.f and physics.u0:
//   zero | constant:V | bump | power:a:b  (forcing only)
// "bump" is prod_d sin(pi x_d).  "power" is the classic unbounded
// representative t^-a * dist(x)^-b with both factors truncated at the grid
// scale h, so on-grid samples stay finite while the declared integrability
// class (finite L^r in time for r < 1/a, L^q in space for q < 1/b) holds
// analytically.
Preset parse_preset(const std::string& text, int dim, double h, bool allow_power)
{
    const auto parts = split_colon(text);
    const std::string& kind = parts[0];
    Preset p;
    if (kind == "zero" && parts.size() == 1) {
        p.forcing = [](const std::array<double, 3>&, double) { return 0.0; };
        p.declared = "Linf";
    } else if (kind == "constant" && parts.size() == 2) {
        const double v = preset_number(text, parts[1]);
        if (v < 0.0)
            throw std::invalid_argument("data preset '" + text + "' is negative");
        p.forcing = [v](const std::array<double, 3>&, double) { return v; };
        p.declared = "Linf";
    } else if (kind == "bump" && parts.size() == 1) {
        p.forcing = [dim](const std::array<double, 3>& x, double) {
            double v = 1.0;
            for (int a = 0; a < dim; ++a)
                v *= std::sin(pi * x[a]);
            return v;
        };
        p.declared = "Linf";
    } else if (kind == "power" && parts.size() == 3 && allow_power) {
        const double a = preset_number(text, parts[1]);
        const double b = preset_number(text, parts[2]);
        if (a < 0.0 || b < 0.0 || (a == 0.0 && b == 0.0))
            throw std::invalid_argument("data preset '" + text +
                                        "' needs exponents a, b >= 0, not both zero");
        p.forcing = [a, b, h, dim](const std::array<double, 3>& x, double t) {
            return std::pow(std::max(t, h), -a) *
                   std::pow(std::max(box_distance(x, dim), h), -b);
        };
        p.declared = "power";
    } else {
        throw std::invalid_argument(
            "unknown data preset '" + text +
            "' (expected zero, constant:V, bump" +
            std::string(allow_power ? ", or power:a:b" : "") + ")");
    }
    p.initial = [f = p.forcing](const std::array<double, 3>& x) { return f(x, 0.0); };
    return p;
}

SourceData source_from_config(const RunConfig& cfg, const Grid& grid,
                              const std::string& f_default, const std::string& u0_default)
{
    const Preset f =
        parse_preset(cfg.get_string("physics.f", f_default), grid.dim, grid.spacing, true);
    const Preset u0 =
        parse_preset(cfg.get_string("physics.u0", u0_default), grid.dim, grid.spacing, false);
    SourceData data;
    data.forcing = f.forcing;
    data.initial = u0.initial;
    data.declared_class = f.declared;
    return data;
}

Scheme scheme_from_config(const RunConfig& cfg)
{
    const std::string name = cfg.get_string("run.scheme", "fixed_point");
    if (name == "fixed_point")
        return Scheme::imex_fixed_point;
    if (name == "lagged")
        return Scheme::imex_lagged;
    throw std::invalid_argument("run.scheme must be fixed_point or lagged, got '" + name + "'");
}

std::vector<int> ladder_from_config(const RunConfig& cfg, std::vector<std::int64_t> fallback)
{
    const auto wide = cfg.get_ladder("ladder", fallback);
    std::vector<int> ladder;
    ladder.reserve(wide.size());
    for (std::int64_t k : wide) {
        if (k > std::numeric_limits<int>::max())
            throw std::invalid_argument("ladder level " + std::to_string(k) + " is out of range");
        ladder.push_back(static_cast<int>(k));
    }
    return ladder;
}

struct ScenarioDefaults {
    int n = 1;
    int N = 64;
    double s = 0.5;
    double gamma = 0.5;
    double T = 0.1;
    double tau = 0.005;
    std::string f = "constant:1";
    std::string u0 = "zero";
    std::vector<std::int64_t> ladder = {1, 2, 4, 8, 16, 32, 64};
};

ProblemSpec spec_from_config(const RunConfig& cfg, const ScenarioDefaults& d)
{
    ProblemSpec spec;
    spec.grid = make_grid(cfg.get_int("grid.n", d.n), cfg.get_int("grid.N", d.N));
    spec.s = cfg.get_double("operator.s", d.s);
    spec.gamma = GammaField::constant(cfg.get_double("physics.gamma", d.gamma));
    spec.source = source_from_config(cfg, spec.grid, d.f, d.u0);
    spec.horizon = cfg.get_double("physics.T", d.T);
    spec.tau = cfg.get_double("physics.tau", d.tau);
    spec.k_ladder = ladder_from_config(cfg, d.ladder);
    spec.scheme = scheme_from_config(cfg);
    return spec;
}

// Doubling ladder 1, 2, 4, ... ending exactly at k.
std::vector<int> doubling_ladder(int k)
{
    std::vector<int> ladder;
    for (int v = 1; v < k; v *= 2)
        ladder.push_back(v);
    ladder.push_back(k);
    return ladder;
}

void write_diagnostics_csv(Workbench& wb, const std::string& rel, const Trajectory& traj,
                           double tau)
{
    CsvWriter csv(wb.dir / rel,
                  {"step", "time", "min", "max", "l2", "linear_iters", "fixed_point_iters"});
    for (std::size_t m = 0; m < traj.diagnostics.size(); ++m) {
        const auto& d = traj.diagnostics[m];
        csv.row({static_cast<double>(m), static_cast<double>(m) * tau, d.min_value, d.max_value,
                 d.l2, static_cast<double>(d.linear_iterations),
                 static_cast<double>(d.fixed_point_iterations)});
    }
    csv.close();
    wb.note_csv(csv, rel);
}

// ---------------------------------------------------------------------------
// manufactured_convergence
//
// Exact state u*(x,t) = 0.1 + (1+t) sin(pi x) on (0,1).  The sin part is
// smooth with zero trace; its local image is pi^2 sin(pi x) and its nonlocal
// image is evaluated once per grid by the adaptive-quadrature reference.
// The constant offset is boundary data, and its contribution enters the
// forcing through the assembled operator's own image of the all-ones field:
// that is the nonlocal analogue of the classical u(wall)/h^2 Dirichlet lift
// (the interior local rows cancel on constants, the wall rows produce
// exactly the lift, and the nonlocal rows produce the exterior-mass terms).
// With f = u*^gamma (u*_t + A u*) every factor is positive and u* solves
// u_t + A u = f / u^gamma.
//
// At these resolutions the operator's consistency error on this profile
// sits near 2e-4 (0.02% of u*), below any practical time-stepping floor, so
// an error slope at fixed tau would read quadrature noise instead of a
// rate.  The spatial study therefore refines along the proportional
// parabolic path tau ~ 0.8 h, where the scheme's first-order envelope
// dominates cleanly; absolute spatial accuracy is pinned separately by the
// reference_accuracy check, and the pure time order by a discrete-reference
// ladder on a fixed grid.
// ---------------------------------------------------------------------------

ScenarioReport scenario_manufactured(const ScenarioContext& ctx, Workbench& wb, CheckList& checks)
{
    const RunConfig& cfg = ctx.config;
    if (cfg.get_int("grid.n", 1) != 1)
        throw std::invalid_argument(
            "manufactured_convergence: the exact profile is one-dimensional (grid.n = 1)");
    const double s = cfg.get_double("operator.s", 0.5);
    if (std::abs(s - 0.5) > 1e-12)
        throw std::invalid_argument(
            "manufactured_convergence: the reference images are computed at operator.s = 0.5");
    const double gamma = cfg.get_double("physics.gamma", 0.5);
    const int base_N = cfg.get_int("grid.N", 32);
    const double horizon = cfg.get_double("physics.T", 0.2);
    const double tau0 = cfg.get_double("physics.tau", 1e-3);
    const int cap = 1000000000; // far above sup f: the regularization never binds

    const double pi = std::acos(-1.0);
    const auto phi = [pi](double x) { return std::sin(pi * x); };
    const auto exact_state = [&](double x, double t) { return 0.1 + (1.0 + t) * phi(x); };

    const FractionalOracle1d oracle(0.5, 10.0, 1e-9);

    struct GridPieces {
        Grid grid;
        std::shared_ptr<const OperatorMatrix> op;
        std::vector<double> phi_nodes;  // sin(pi x) at the nodes
        std::vector<double> image_sin;  // continuum image of the sin part
        std::vector<double> lift;       // assembled image of the all-ones field
    };
    const auto prepare = [&](int N) {
        GridPieces p;
        p.grid = make_grid(1, N);
        p.op = std::make_shared<const OperatorMatrix>(assemble_mixed_operator(p.grid, 0.5));
        const auto n = static_cast<std::size_t>(p.grid.node_count());
        p.phi_nodes.resize(n);
        p.image_sin.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = p.grid.coordinates(static_cast<std::int64_t>(i))[0];
            p.phi_nodes[i] = phi(x);
            p.image_sin[i] = pi * pi * phi(x) + oracle.apply(phi, x);
        }
        p.lift = p.op->apply(std::vector<double>(n, 1.0));
        return p;
    };

    const auto run_final = [&](const GridPieces& p, double tau) {
        ProblemSpec spec;
        spec.grid = p.grid;
        spec.s = 0.5;
        spec.gamma = GammaField::constant(gamma);
        spec.horizon = horizon;
        spec.tau = tau;
        spec.k_ladder = {cap};
        spec.scheme = Scheme::imex_lagged;
        spec.source.initial = [&exact_state](const std::array<double, 3>& x) {
            return exact_state(x[0], 0.0);
        };
        const auto n = p.phi_nodes.size();
        const int steps = static_cast<int>(std::llround(horizon / tau));
        spec.source.forcing_samples.assign(static_cast<std::size_t>(steps) + 1,
                                           std::vector<double>(n));
        for (int m = 0; m <= steps; ++m) {
            const double t = m * tau;
            for (std::size_t i = 0; i < n; ++i)
                spec.source.forcing_samples[static_cast<std::size_t>(m)][i] =
                    std::pow(0.1 + (1.0 + t) * p.phi_nodes[i], gamma) *
                    (p.phi_nodes[i] + (1.0 + t) * p.image_sin[i] + 0.1 * p.lift[i]);
        }
        spec.source.declared_class = "Linf";
        EvolveWorkspace ws(spec, p.op);
        return solve_parabolic(ws, cap).fields.back();
    };

    // Sup error against the exact final state over the central region
    // (boundary distance >= 0.25; at these resolutions the full-domain sup
    // agrees, but the masked functional is the declared observable).
    const auto central_error = [&](const GridPieces& p, const Field& u) {
        double worst = 0.0;
        for (std::int64_t i = 0; i < p.grid.node_count(); ++i) {
            if (p.grid.boundary_distance(i) < 0.25)
                continue;
            const double x = p.grid.coordinates(i)[0];
            worst = std::max(worst,
                             std::abs(u[static_cast<std::size_t>(i)] - exact_state(x, horizon)));
        }
        return worst;
    };

    std::vector<GridPieces> pieces;
    pieces.reserve(3);
    for (int j = 0; j < 3; ++j)
        pieces.push_back(prepare(base_N << j));

    CsvWriter csv(wb.dir / "convergence.csv", {"family", "scale", "error"});

    std::vector<double> hs, space_err;
    for (const GridPieces& p : pieces) {
        const auto steps =
            std::max<std::int64_t>(1, std::llround(horizon * p.grid.cells_per_axis / 0.8));
        const double tau = horizon / static_cast<double>(steps);
        const double err = central_error(p, run_final(p, tau));
        hs.push_back(p.grid.spacing);
        space_err.push_back(err);
        csv.row({0.0, p.grid.spacing, err});
    }
    std::vector<double> lh, lse;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        lh.push_back(std::log(hs[i]));
        lse.push_back(std::log(space_err[i]));
    }
    const double spatial_order = least_squares_slope(lh, lse);

    const Field reference = run_final(pieces[1], tau0 / 8.0);
    std::vector<double> taus, time_err;
    for (double tau : {4.0 * tau0, 2.0 * tau0, tau0}) {
        const Field u = run_final(pieces[1], tau);
        const double err = sup_gap(u, reference);
        taus.push_back(tau);
        time_err.push_back(err);
        csv.row({1.0, tau, err});
    }
    std::vector<double> lt, lte;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        lt.push_back(std::log(taus[i]));
        lte.push_back(std::log(time_err[i]));
    }
    const double temporal_order = least_squares_slope(lt, lte);

    // Absolute anchor: finest grid at the base step against the closed form.
    const Field anchor = run_final(pieces[2], tau0);
    double sup_exact = 0.0;
    for (std::int64_t i = 0; i < pieces[2].grid.node_count(); ++i)
        sup_exact = std::max(sup_exact,
                             std::abs(exact_state(pieces[2].grid.coordinates(i)[0], horizon)));
    const double anchor_rel = central_error(pieces[2], anchor) / sup_exact;
    csv.row({2.0, tau0, anchor_rel});

    csv.close();
    wb.note_csv(csv, "convergence.csv");

    checks.add_ge("spatial_order", spatial_order, 1.0,
                  "proportional-path refinement, tau ~ 0.8 h");
    checks.add_ge("temporal_order", temporal_order, 0.9);
    checks.add_le("reference_accuracy", anchor_rel, 0.02,
                  "relative sup at the final time against the exact state");

    const int fine_N = 4 * base_N;
    SnapshotInfo info;
    info.n = 1;
    info.N = fine_N;
    info.s = 0.5;
    info.k = cap;
    info.step = static_cast<std::int64_t>(std::llround(horizon / tau0));
    info.tau = tau0;
    info.time = horizon;
    wb.snapshot("state_final", pieces[2].grid, anchor, info);

    PlotSpec plot;
    plot.title = "error against the exact profile";
    plot.x_label = "h (space) / tau (time)";
    plot.y_label = "sup error";
    plot.log_x = true;
    plot.log_y = true;
    wb.plot("convergence.svg", plot,
            {PlotSeries{"space refinement", hs, space_err},
             PlotSeries{"time refinement", taus, time_err}});
    return {};
}


// ---------------------------------------------------------------------------
// monotone_ladder
// ---------------------------------------------------------------------------

ScenarioReport scenario_ladder(const ScenarioContext& ctx, Workbench& wb, CheckList& checks)
{
    ScenarioDefaults d;
    d.gamma = 2.0;
    ProblemSpec spec = spec_from_config(ctx.config, d);
    EvolveWorkspace ws(spec);
    const LadderResult res = solve_ladder(ws);

    checks.add_le("ladder_monotone", res.monotonicity.worst_excess, ordering_tolerance);
    if (res.cauchy_checked)
        checks.add_le("ladder_cauchy", res.cauchy.worst_excess, ordering_tolerance);
    else
        checks.add_le("ladder_cauchy", 0.0, ordering_tolerance,
                      "skipped: forcing class is not bounded, the 1/k envelope does not apply");

    CsvWriter rung_csv(wb.dir / "ladder.csv", {"k", "sup_final", "sup_cylinder"});
    std::vector<double> ks, sups;
    for (const auto& traj : res.rungs) {
        const double sup_cyl = trajectory_sup(traj);
        rung_csv.row({static_cast<double>(traj.k), sup_abs(traj.fields.back()), sup_cyl});
        ks.push_back(static_cast<double>(traj.k));
        sups.push_back(sup_cyl);
    }
    rung_csv.close();
    wb.note_csv(rung_csv, "ladder.csv");

    CsvWriter inc_csv(wb.dir / "increments.csv", {"k_low", "k_high", "sup_gap"});
    std::vector<double> k_his, gaps;
    for (std::size_t i = 0; i + 1 < res.rungs.size(); ++i) {
        inc_csv.row({static_cast<double>(res.rungs[i].k), static_cast<double>(res.rungs[i + 1].k),
                     res.increment_sup[i]});
        k_his.push_back(static_cast<double>(res.rungs[i + 1].k));
        gaps.push_back(res.increment_sup[i]);
    }
    inc_csv.close();
    wb.note_csv(inc_csv, "increments.csv");

    write_diagnostics_csv(wb, "diagnostics.csv", res.limit(), spec.tau);

    for (const auto& traj : res.rungs) {
        SnapshotInfo info;
        info.n = spec.grid.dim;
        info.N = spec.grid.cells_per_axis;
        info.s = spec.s;
        info.k = traj.k;
        info.tau = spec.tau;
        SnapshotInfo first = info;
        first.step = 0;
        first.time = 0.0;
        SnapshotInfo last = info;
        last.step = static_cast<std::int64_t>(traj.fields.size()) - 1;
        last.time = spec.horizon;
        const std::string base = "k" + std::to_string(traj.k);
        wb.snapshot(base + "_first", spec.grid, traj.fields.front(), first);
        wb.snapshot(base + "_last", spec.grid, traj.fields.back(), last);
    }

    PlotSpec plot;
    plot.title = "regularization ladder";
    plot.x_label = "k";
    plot.y_label = "sup over the cylinder / rung gap";
    plot.log_x = true;
    plot.log_y = true;
    wb.plot("ladder.svg", plot,
            {PlotSeries{"sup of rung", ks, sups}, PlotSeries{"gap to next rung", k_his, gaps}});
    return {};
}

// ---------------------------------------------------------------------------
// comparison_principle
// ---------------------------------------------------------------------------

ScenarioReport scenario_comparison(const ScenarioContext& ctx, Workbench& wb, CheckList& checks)
{
    const RunConfig& cfg = ctx.config;
    ScenarioDefaults d;
    d.N = 32;
    d.gamma = 1.0;
    d.T = 0.05;
    d.ladder = {8};
    ProblemSpec spec = spec_from_config(cfg, d);
    const int k = cfg.get_int("physics.k", spec.k_ladder.back());
    const int pairs = cfg.get_int("scan.pairs", 3);
    if (pairs < 1)
        throw std::invalid_argument("scan.pairs must be at least 1");

    const Grid& grid = spec.grid;
    const auto nodes = static_cast<std::size_t>(grid.node_count());
    const int steps = step_count(spec);

    const auto replicate = [&](const Field& slice) {
        return std::vector<Field>(static_cast<std::size_t>(steps) + 1, slice);
    };

    CsvWriter csv(wb.dir / "pairs.csv", {"pair", "worst_excess"});
    EvolveWorkspace* ws = nullptr;
    std::unique_ptr<EvolveWorkspace> ws_holder;
    for (int p = 0; p < pairs; ++p) {
        std::mt19937_64 rng(ctx.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(p + 1));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        Field f_lo(nodes), f_hi(nodes), u0_lo(nodes), u0_hi(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            f_lo[i] = 0.5 + 0.5 * unit(rng);
            f_hi[i] = f_lo[i] + 0.5 * unit(rng);
            u0_lo[i] = 0.2 * unit(rng);
            u0_hi[i] = u0_lo[i] + 0.3 * unit(rng);
        }
        SourceData low;
        low.forcing_samples = replicate(f_lo);
        low.initial_samples = u0_lo;
        low.declared_class = "Linf";
        SourceData high;
        high.forcing_samples = replicate(f_hi);
        high.initial_samples = u0_hi;
        high.declared_class = "Linf";

        if (!ws) {
            spec.source = low; // any admissible data; pairs supply their own
            ws_holder = std::make_unique<EvolveWorkspace>(spec);
            ws = ws_holder.get();
        }
        const OrderingReport rep = compare_solutions(*ws, k, low, high);
        checks.add_le("pair_" + std::to_string(p) + "_ordered", rep.worst_excess,
                      ordering_tolerance);
        csv.row({static_cast<double>(p), rep.worst_excess});
    }
    csv.close();
    wb.note_csv(csv, "pairs.csv");
    return {};
}

// ---------------------------------------------------------------------------
// positivity_floor
// ---------------------------------------------------------------------------

ScenarioReport scenario_positivity(const ScenarioContext& ctx, Workbench& wb, CheckList& checks)
{
    ScenarioDefaults d;
    d.ladder = {1, 2, 4, 8, 16};
    ProblemSpec spec = spec_from_config(ctx.config, d);
    EvolveWorkspace ws(spec);
    const LadderResult res = solve_ladder(ws);
    const Grid& grid = spec.grid;
    const int M = step_count(spec);
    const int first_step = std::max(1, M / 4);

    // Interior floor: skip a boundary collar (the state vanishes there by
    // construction) and an initial burn-in (the zero start needs a few steps
    // to lift off).
    const auto floor_of = [&](const Trajectory& traj) {
        double floor = std::numeric_limits<double>::infinity();
        for (std::size_t m = static_cast<std::size_t>(first_step); m < traj.fields.size(); ++m)
            for (std::int64_t i = 0; i < grid.node_count(); ++i)
                if (grid.boundary_distance(i) >= 0.25)
                    floor = std::min(floor, traj.fields[m][static_cast<std::size_t>(i)]);
        return floor;
    };

    CsvWriter csv(wb.dir / "floor.csv", {"k", "interior_floor"});
    std::vector<double> ks, floors;
    for (const auto& traj : res.rungs) {
        const double f = floor_of(traj);
        csv.row({static_cast<double>(traj.k), f});
        ks.push_back(static_cast<double>(traj.k));
        floors.push_back(f);
    }
    csv.close();
    wb.note_csv(csv, "floor.csv");

    double min_floor = std::numeric_limits<double>::infinity();
    double worst_drop = 0.0;
    for (std::size_t i = 0; i < floors.size(); ++i) {
        min_floor = std::min(min_floor, floors[i]);
        if (i + 1 < floors.size())
            worst_drop = std::max(worst_drop, floors[i] - floors[i + 1]);
    }
    checks.add("floor_positive", min_floor, 0.0, ">");
    checks.add_le("floor_monotone_in_k", worst_drop, 1e-12);

    PlotSpec plot;
    plot.title = "interior positivity floor";
    plot.x_label = "k";
    plot.y_label = "min over central region, later steps";
    plot.log_x = true;
    wb.plot("floor.svg", plot, {PlotSeries{"floor", ks, floors}});
    return {};
}

// ---------------------------------------------------------------------------
// bounded_data
// ---------------------------------------------------------------------------

ScenarioReport scenario_bounded(const ScenarioContext& ctx, Workbench& wb, CheckList& checks)
{
    const RunConfig& cfg = ctx.config;
    ScenarioDefaults d;
    d.ladder = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
    ProblemSpec spec = spec_from_config(cfg, d);
    if (!bounded_forcing(spec.source))
        throw std::invalid_argument("bounded_data: physics.f must be a bounded preset");
    const double plateau_tol = cfg.get_double("scan.plateau_tol", 0.01);

    EvolveWorkspace ws(spec);
    const LadderResult res = solve_ladder(ws);

    CsvWriter csv(wb.dir / "sup.csv", {"k", "sup_cylinder"});
    std::vector<double> sups;
    for (const auto& traj : res.rungs) {
        sups.push_back(trajectory_sup(traj));
        csv.row({static_cast<double>(traj.k), sups.back()});
    }
    csv.close();
    wb.note_csv(csv, "sup.csv");

    checks.add_le("ladder_monotone", res.monotonicity.worst_excess, ordering_tolerance);
    checks.add_le("ladder_cauchy", res.cauchy.worst_excess, ordering_tolerance);
    const std::size_t last = sups.size() - 1;
    const double rel_jump =
        std::abs(sups[last] - sups[last - 1]) / std::max(sups[last], 1e-300);
    checks.add_le("sup_plateau", rel_jump, plateau_tol);

    // Energy of the limit rung, cross-checked under grid refinement when the
    // largest exponent allows the plain H1 ledger.
    const double gamma_up = spec.gamma.upper();
    if (gamma_up <= 1.0 && cfg.get_bool("scan.refine", true)) {
        const auto energy_of = [&](const ProblemSpec& s) {
            EvolveWorkspace w(s);
            const Trajectory traj = solve_parabolic(w, s.k_ladder.back());
            double acc = 0.0;
            for (std::size_t m = 1; m < traj.fields.size(); ++m) {
                const double g = h1_seminorm(s.grid, traj.fields[m], 2.0);
                acc += s.tau * g * g;
            }
            return acc;
        };
        ProblemSpec coarse = spec;
        coarse.k_ladder = {spec.k_ladder.back()};
        ProblemSpec fine = coarse;
        fine.grid = make_grid(spec.grid.dim, 2 * spec.grid.cells_per_axis);
        const double e_coarse = energy_of(coarse);
        const double e_fine = energy_of(fine);
        const double drift = std::abs(std::log2(e_fine / e_coarse));
        checks.add_le("energy_refinement", drift, 1.0);
    } else if (gamma_up > 1.0) {
        checks.add_le("energy_refinement", 0.0, 1.0,
                      "skipped: exponent above 1, the plain gradient ledger is not expected");
    }

    const Trajectory& limit = res.limit();
    std::vector<double> times, max_hist, l2_hist;
    for (std::size_t m = 0; m < limit.diagnostics.size(); ++m) {
        times.push_back(static_cast<double>(m) * spec.tau);
        max_hist.push_back(limit.diagnostics[m].max_value);
        l2_hist.push_back(limit.diagnostics[m].l2);
    }
    PlotSpec plot;
    plot.title = "limit rung history";
    plot.x_label = "t";
    plot.y_label = "norm";
    wb.plot("history.svg", plot,
            {PlotSeries{"sup", times, max_hist}, PlotSeries{"l2", times, l2_hist}});
    return {};
}

// ---------------------------------------------------------------------------
// aronson_serrin
// ---------------------------------------------------------------------------

ScenarioReport scenario_aronson_serrin(const ScenarioContext& ctx, Workbench& wb,
                                       CheckList& checks)
{
    const RunConfig& cfg = ctx.config;
    ScenarioDefaults d;
    d.n = 3;
    d.N = 16;
    d.T = 0.05;
    d.tau = 0.01;
    d.u0 = "constant:1";
    d.ladder = {16, 64, 128};
    ProblemSpec spec = spec_from_config(cfg, d);

    EvolveWorkspace ws(spec);
    const LadderResult res = solve_ladder(ws);

    double sup_all = 0.0;
    CsvWriter csv(wb.dir / "rungs.csv", {"k", "sup_cylinder", "sup_final"});
    for (const auto& traj : res.rungs) {
        sup_all = std::max(sup_all, trajectory_sup(traj));
        csv.row({static_cast<double>(traj.k), trajectory_sup(traj),
                 sup_abs(traj.fields.back())});
    }
    csv.close();
    wb.note_csv(csv, "rungs.csv");

    checks.add_le("sup_bounded", sup_all, 1e6);
    checks.add_le("ladder_monotone", res.monotonicity.worst_excess, ordering_tolerance);
    const auto& tail = res.rungs[res.rungs.size() - 1];
    const auto& prev = res.rungs[res.rungs.size() - 2];
    const double gap = sup_gap(tail.fields.back(), prev.fields.back());
    checks.add_le("tail_plateau", gap, 0.01 * sup_abs(tail.fields.back()));

    SnapshotInfo info;
    info.n = spec.grid.dim;
    info.N = spec.grid.cells_per_axis;
    info.s = spec.s;
    info.k = tail.k;
    info.step = static_cast<std::int64_t>(tail.fields.size()) - 1;
    info.tau = spec.tau;
    info.time = spec.horizon;
    wb.snapshot("limit_final", spec.grid, tail.fields.back(), info);

    // Exploratory mirror with forcing outside the bounded class: recorded,
    // never judged -- the point is to watch the sup grow as k climbs.
    if (cfg.get_bool("scan.exploratory", true)) {
        ProblemSpec wild = spec;
        wild.source = SourceData{};
        const Preset f =
            parse_preset("power:0.5:0.5", spec.grid.dim, spec.grid.spacing, true);
        wild.source.forcing = f.forcing;
        wild.source.initial = parse_preset(cfg.get_string("physics.u0", d.u0),
                                           spec.grid.dim, spec.grid.spacing, false)
                                  .initial;
        wild.source.declared_class = f.declared;
        wild.k_ladder = {8, 16};
        EvolveWorkspace ws_wild(wild, ws.shared_op());
        CsvWriter wcsv(wb.dir / "exploratory.csv", {"k", "sup_cylinder"});
        for (int k : wild.k_ladder) {
            const Trajectory traj = solve_parabolic(ws_wild, k);
            wcsv.row({static_cast<double>(k), trajectory_sup(traj)});
        }
        wcsv.close();
        wb.note_csv(wcsv, "exploratory.csv");
    }
    return {};
}

// ---------------------------------------------------------------------------
// summability_scan
// ---------------------------------------------------------------------------

ScenarioReport scenario_summability(const ScenarioContext& ctx, Workbench& wb, CheckList& checks)
{
    const RunConfig& cfg = ctx.config;
    ScenarioDefaults d;
    d.n = 3;
    d.N = 8;
    d.T = 0.05;
    d.tau = 0.01;
    d.ladder = {16};
    ProblemSpec spec = spec_from_config(cfg, d);
    if (spec.grid.dim < 3)
        throw std::invalid_argument(
            "summability_scan: the exponent chart needs n > 2; run with grid.n = 3");
    const int k = cfg.get_int("physics.k", spec.k_ladder.back());
    const double gamma = spec.gamma.upper();
    const double m_class = cfg.get_double("scan.m", 1.0);
    const double r_class = cfg.get_double("scan.r", 2.0);
    const double q_class = cfg.get_double("scan.q", 2.0);

    const ExponentReport chart = exponents(spec.grid.dim, gamma, m_class, r_class, q_class);
    {
        CsvWriter csv(wb.dir / "chart.csv",
                      {"m_bar", "q_bar", "sigma_L", "sigma_energy", "aronson_serrin",
                       "outside_zone", "outside_branch", "outside_zone_sigma"});
        csv.row({chart.m_bar, chart.q_bar_valid ? chart.q_bar : -1.0,
                 chart.sigma_L_valid ? chart.sigma_L : -1.0, chart.sigma_energy,
                 chart.aronson_serrin ? 1.0 : 0.0, chart.outside_zone ? 1.0 : 0.0,
                 static_cast<double>(chart.outside_branch),
                 chart.outside_zone_sigma_valid ? chart.outside_zone_sigma : -1.0});
        csv.close();
        wb.note_csv(csv, "chart.csv");
    }

    struct NormEntry {
        std::string name;
        std::function<double(const Grid&, const Trajectory&)> eval;
    };
    std::vector<NormEntry> battery;
    const double tau = spec.tau;
    battery.push_back({"Linf_L2", [tau](const Grid& g, const Trajectory& t) {
                           return bochner_norm(g, tau, t, sup_exponent, 2.0);
                       }});
    const auto grad_energy = [tau](const Grid& g, const Trajectory& t, double q) {
        double acc = 0.0;
        for (std::size_t m = 1; m < t.fields.size(); ++m)
            acc += tau * std::pow(h1_seminorm(g, t.fields[m], q), q);
        return std::pow(acc, 1.0 / q);
    };
    battery.push_back({"L2_H1", [grad_energy](const Grid& g, const Trajectory& t) {
                           return grad_energy(g, t, 2.0);
                       }});
    if (chart.q_bar_valid && chart.q_bar >= 1.0) {
        const double qb = chart.q_bar;
        battery.push_back({"Lqbar_W1qbar", [grad_energy, qb](const Grid& g, const Trajectory& t) {
                               return grad_energy(g, t, qb);
                           }});
    }
    if (chart.sigma_L_valid && chart.sigma_L >= 1.0) {
        const double sl = chart.sigma_L;
        battery.push_back({"L_sigma", [tau, sl](const Grid& g, const Trajectory& t) {
                               return lp_space_time(g, tau, t, sl);
                           }});
    }
    if (chart.outside_zone && chart.outside_zone_sigma_valid) {
        const double so = chart.outside_zone_sigma;
        battery.push_back({"Linf_L2sigma", [tau, so](const Grid& g, const Trajectory& t) {
                               return bochner_norm(g, tau, t, sup_exponent, 2.0 * so);
                           }});
    }

    const auto run_traj = [&](const Grid& grid) {
        ProblemSpec run = spec;
        run.grid = grid;
        run.source = source_from_config(cfg, grid, d.f, d.u0);
        run.k_ladder = {k};
        EvolveWorkspace ws(run);
        return solve_parabolic(ws, k);
    };

    CsvWriter csv(wb.dir / "summability.csv", {"norm_id", "N", "value"});
    const Trajectory coarse = run_traj(spec.grid);
    std::vector<double> coarse_vals;
    for (std::size_t b = 0; b < battery.size(); ++b) {
        coarse_vals.push_back(battery[b].eval(spec.grid, coarse));
        csv.row({static_cast<double>(b), static_cast<double>(spec.grid.cells_per_axis),
                 coarse_vals.back()});
        checks.add_le("finite_" + battery[b].name,
                      std::isfinite(coarse_vals[b]) ? 0.0 : 1.0, 0.0);
    }
    if (cfg.get_bool("scan.refine", true)) {
        const Grid fine = make_grid(spec.grid.dim, 2 * spec.grid.cells_per_axis);
        const Trajectory refined = run_traj(fine);
        for (std::size_t b = 0; b < battery.size(); ++b) {
            const double v = battery[b].eval(fine, refined);
            csv.row({static_cast<double>(b), static_cast<double>(fine.cells_per_axis), v});
            const double drift = std::abs(std::log2(v / coarse_vals[b]));
            checks.add_le("stability_" + battery[b].name, drift, 1.0);
        }
    }
    csv.close();
    wb.note_csv(csv, "summability.csv");
    return {};
}

// ---------------------------------------------------------------------------
// variable_gamma
// ---------------------------------------------------------------------------

// "ramp:lo:hi": lo at the boundary rising to hi at the center through
// prod_d sin^2(pi x_d), switched on over the first few steps so the exponent
// stays at lo on the whole initial sheet of the parabolic boundary strip.
std::vector<Field> gamma_ramp_samples(const Grid& grid, double lo, double hi, int steps,
                                      int onset_steps)
{
    const auto nodes = static_cast<std::size_t>(grid.node_count());
    Field shape(nodes);
    for (std::int64_t i = 0; i < grid.node_count(); ++i) {
        const auto x = grid.coordinates(i);
        double b = 1.0;
        for (int a = 0; a < grid.dim; ++a) {
            const double sn = std::sin(pi * x[a]);
            b *= sn * sn;
        }
        shape[static_cast<std::size_t>(i)] = b;
    }
    std::vector<Field> per_step;
    per_step.reserve(static_cast<std::size_t>(steps) + 1);
    for (int m = 0; m <= steps; ++m) {
        const double onset = std::min(1.0, static_cast<double>(m) / onset_steps);
        Field g(nodes);
        for (std::size_t i = 0; i < nodes; ++i)
            g[i] = lo + (hi - lo) * onset * shape[i];
        per_step.push_back(std::move(g));
    }
    return per_step;
}

ScenarioReport scenario_variable_gamma(const ScenarioContext& ctx, Workbench& wb,
                                       CheckList& checks)
{
    const RunConfig& cfg = ctx.config;
    ScenarioDefaults d;
    d.T = 0.05;
    d.ladder = {8};
    ProblemSpec spec = spec_from_config(cfg, d);
    const int k = cfg.get_int("physics.k", spec.k_ladder.back());

    const std::string profile = cfg.get_string("physics.gamma_profile", "ramp:0.4:1.5");
    const auto parts = split_colon(profile);
    if (parts.size() != 3 || parts[0] != "ramp")
        throw std::invalid_argument("physics.gamma_profile must be ramp:lo:hi, got '" + profile +
                                    "'");
    const double lo = preset_number(profile, parts[1]);
    const double hi = preset_number(profile, parts[2]);
    if (lo <= 0.0 || hi < lo)
        throw std::invalid_argument("physics.gamma_profile needs 0 < lo <= hi");
    if (lo > 1.0)
        throw std::invalid_argument(
            "physics.gamma_profile: lo must stay at most 1 so the boundary strip hypothesis "
            "can hold");

    const double delta = cfg.get_double("strip.delta", 0.2);
    const double strip_tau = cfg.get_double("strip.tau", 0.5);
    const int M = step_count(spec);
    const int onset_steps = 4;

    const auto build_gamma = [&](const Grid& grid) {
        return GammaField::from_samples(gamma_ramp_samples(grid, lo, hi, M, onset_steps));
    };
    spec.gamma = build_gamma(spec.grid);

    const StripMask strip = make_strip_mask(spec.grid, delta, strip_tau, M);
    const GammaValidation validation =
        validate_gamma_profile(spec.gamma, strip, GammaCondition::unit_bound);
    checks.add_le("strip_hypothesis", validation.worst_value, validation.threshold,
                  validation.passed ? "" : "exponent exceeds 1 on the boundary strip");

    struct NormEntry {
        std::string name;
        std::function<double(const Grid&, const Trajectory&)> eval;
    };
    const double tau = spec.tau;
    const auto grad_energy = [tau](const Grid& g, const Trajectory& t,
                                   const std::function<Field(const Grid&, const Field&)>& map) {
        double acc = 0.0;
        for (std::size_t m = 1; m < t.fields.size(); ++m) {
            const double gq = h1_seminorm(g, map(g, t.fields[m]), 2.0);
            acc += tau * gq * gq;
        }
        return std::sqrt(acc);
    };
    const auto identity = [](const Grid&, const Field& u) { return u; };

    std::vector<NormEntry> battery;
    battery.push_back({"Linf_L2", [tau](const Grid& g, const Trajectory& t) {
                           return bochner_norm(g, tau, t, sup_exponent, 2.0);
                       }});
    battery.push_back({"L2_H1", [grad_energy, identity](const Grid& g, const Trajectory& t) {
                           return grad_energy(g, t, identity);
                       }});
    if (hi > 1.0) {
        const double power = (hi + 1.0) / 2.0;
        battery.push_back(
            {"L2_H1_power", [grad_energy, power](const Grid& g, const Trajectory& t) {
                 return grad_energy(g, t, [power](const Grid&, const Field& u) {
                     Field v(u.size());
                     for (std::size_t i = 0; i < u.size(); ++i)
                         v[i] = std::pow(u[i], power);
                     return v;
                 });
             }});
        battery.push_back(
            {"L2_H1_interior", [grad_energy](const Grid& g, const Trajectory& t) {
                 return grad_energy(g, t, [](const Grid& grid, const Field& u) {
                     Field v(u.size(), 0.0);
                     for (std::int64_t i = 0; i < grid.node_count(); ++i)
                         if (grid.boundary_distance(i) >= 0.25)
                             v[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)];
                     return v;
                 });
             }});
    }

    const auto run_traj = [&](const Grid& grid) {
        ProblemSpec run = spec;
        run.grid = grid;
        run.gamma = build_gamma(grid);
        run.source = source_from_config(cfg, grid, d.f, d.u0);
        run.k_ladder = {k};
        EvolveWorkspace ws(run);
        return solve_parabolic(ws, k);
    };

    CsvWriter csv(wb.dir / "norms.csv", {"norm_id", "N", "value"});
    const Trajectory coarse = run_traj(spec.grid);
    std::vector<double> coarse_vals;
    for (std::size_t b = 0; b < battery.size(); ++b) {
        coarse_vals.push_back(battery[b].eval(spec.grid, coarse));
        csv.row({static_cast<double>(b), static_cast<double>(spec.grid.cells_per_axis),
                 coarse_vals.back()});
    }
    if (cfg.get_bool("scan.refine", true)) {
        const Grid fine = make_grid(spec.grid.dim, 2 * spec.grid.cells_per_axis);
        const Trajectory refined = run_traj(fine);
        for (std::size_t b = 0; b < battery.size(); ++b) {
            const double v = battery[b].eval(fine, refined);
            csv.row({static_cast<double>(b), static_cast<double>(fine.cells_per_axis), v});
            checks.add_le("stability_" + battery[b].name,
                          std::abs(std::log2(v / coarse_vals[b])), 1.0);
        }
    }
    csv.close();
    wb.note_csv(csv, "norms.csv");

    // The fully-ramped exponent profile, for inspection.
    Field gamma_slice(static_cast<std::size_t>(spec.grid.node_count()));
    for (std::int64_t i = 0; i < spec.grid.node_count(); ++i)
        gamma_slice[static_cast<std::size_t>(i)] = spec.gamma.at(i, M);
    SnapshotInfo info;
    info.n = spec.grid.dim;
    info.N = spec.grid.cells_per_axis;
    info.s = spec.s;
    info.step = M;
    info.tau = spec.tau;
    info.time = spec.horizon;
    wb.snapshot("gamma_profile", spec.grid, gamma_slice, info);

    if (spec.grid.dim == 1) {
        std::vector<double> xs, gs;
        for (std::int64_t i = 0; i < spec.grid.node_count(); ++i) {
            xs.push_back(spec.grid.coordinates(i)[0]);
            gs.push_back(gamma_slice[static_cast<std::size_t>(i)]);
        }
        PlotSpec plot;
        plot.title = "exponent profile at the final step";
        plot.x_label = "x";
        plot.y_label = "gamma";
        wb.plot("gamma.svg", plot, {PlotSeries{"gamma", xs, gs}});
    }
    return {};
}

// ---------------------------------------------------------------------------
// asymptotic_steady
// ---------------------------------------------------------------------------

ScenarioReport scenario_asymptotic(const ScenarioContext& ctx, Workbench& wb, CheckList& checks)
{
    const RunConfig& cfg = ctx.config;
    ScenarioDefaults d;
    d.gamma = 1.0;
    d.T = 20.0;
    d.tau = 0.025;
    d.ladder = {64};
    ProblemSpec base = spec_from_config(cfg, d);
    const int k = cfg.get_int("physics.k", base.k_ladder.back());
    base.fixed_point_tol = 1e-12;

    const double total = base.horizon;
    const double tau = base.tau;
    const auto steps_total = static_cast<std::int64_t>(std::llround(total / tau));
    if (steps_total < 1 || std::abs(static_cast<double>(steps_total) * tau - total) >
                               1e-9 * std::max(1.0, total))
        throw std::invalid_argument("asymptotic_steady: physics.T must be a multiple of tau");

    // The horizon is run in equal legs (restart chaining) so the linear
    // factorization and trajectory storage stay modest; pick the smallest leg
    // count with at most 64 steps per leg that divides the total step count.
    std::int64_t legs = (steps_total + 63) / 64;
    while (steps_total % legs != 0)
        ++legs;
    const std::int64_t steps_per_leg = steps_total / legs;

    ProblemSpec leg_spec = base;
    leg_spec.horizon = static_cast<double>(steps_per_leg) * tau;
    leg_spec.k_ladder = {k};
    EvolveWorkspace ws(leg_spec);

    const Grid& grid = leg_spec.grid;
    const Field f_grid = sample_forcing(leg_spec.source, grid, 0, 0.0);
    const SteadyState steady =
        solve_elliptic(ws.op(), leg_spec.gamma.upper(), f_grid, doubling_ladder(k));
    const Field& w = steady.w;

    const auto chain = [&](const Field* start) {
        Trajectory all;
        all.k = k;
        Field cur;
        const Field* init = start;
        for (std::int64_t leg = 0; leg < legs; ++leg) {
            const double offset = static_cast<double>(leg * steps_per_leg) * tau;
            Trajectory part = solve_parabolic(ws, k, init, offset);
            const std::size_t from = (leg == 0) ? 0 : 1;
            for (std::size_t m = from; m < part.fields.size(); ++m) {
                all.fields.push_back(std::move(part.fields[m]));
                all.diagnostics.push_back(part.diagnostics[m]);
            }
            cur = all.fields.back();
            init = &cur;
        }
        return all;
    };

    const Trajectory from_zero = chain(nullptr);
    const OrderingReport mono = check_time_monotone(from_zero);
    checks.add_le("time_monotone", mono.worst_excess, ordering_tolerance);

    double worst_over = -std::numeric_limits<double>::infinity();
    for (const auto& slice : from_zero.fields)
        worst_over = std::max(worst_over, signed_excess(slice, w));
    checks.add_le("steady_domination", worst_over, 1e-8);

    Field gap_final(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        gap_final[i] = from_zero.fields.back()[i] - w[i];
    const double w_l2 = l2_grid(grid, w);
    checks.add_le("long_time_l2_gap", l2_grid(grid, gap_final), 0.01 * w_l2,
                  w_l2 == 0.0 ? "zero forcing: both states vanish" : "");

    const Trajectory from_steady = chain(&w);
    checks.add_le("initial_independence",
                  sup_gap(from_zero.fields.back(), from_steady.fields.back()), 1e-8);

    CsvWriter csv(wb.dir / "approach.csv", {"time", "sup_u", "l2_gap_to_steady"});
    std::vector<double> times, gaps;
    for (std::size_t m = 0; m < from_zero.fields.size(); ++m) {
        Field diff(w.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            diff[i] = from_zero.fields[m][i] - w[i];
        const double g = l2_grid(grid, diff);
        const double t = static_cast<double>(m) * tau;
        csv.row({t, from_zero.diagnostics[m].max_value, g});
        times.push_back(t);
        gaps.push_back(g);
    }
    csv.close();
    wb.note_csv(csv, "approach.csv");

    SnapshotInfo winfo;
    winfo.n = grid.dim;
    winfo.N = grid.cells_per_axis;
    winfo.s = leg_spec.s;
    winfo.k = steady.k_used;
    wb.snapshot("steady_state", grid, w, winfo);
    SnapshotInfo uinfo = winfo;
    uinfo.k = k;
    uinfo.step = steps_total;
    uinfo.tau = tau;
    uinfo.time = total;
    wb.snapshot("parabolic_final", grid, from_zero.fields.back(), uinfo);

    if (*std::max_element(gaps.begin(), gaps.end()) > 0.0) {
        PlotSpec plot;
        plot.title = "approach to the steady state";
        plot.x_label = "t";
        plot.y_label = "l2 gap";
        plot.log_y = true;
        wb.plot("approach.svg", plot, {PlotSeries{"|u(t) - w|", times, gaps}});
    }
    return {};
}

// ---------------------------------------------------------------------------
// Registry.
// ---------------------------------------------------------------------------

using ScenarioFn = ScenarioReport (*)(const ScenarioContext&, Workbench&, CheckList&);

struct RegistryEntry {
    const char* name;
    ScenarioFn fn;
};

constexpr RegistryEntry registry[] = {
    {"manufactured_convergence", scenario_manufactured},
    {"monotone_ladder", scenario_ladder},
    {"comparison_principle", scenario_comparison},
    {"positivity_floor", scenario_positivity},
    {"bounded_data", scenario_bounded},
    {"aronson_serrin", scenario_aronson_serrin},
    {"summability_scan", scenario_summability},
    {"variable_gamma", scenario_variable_gamma},
    {"asymptotic_steady", scenario_asymptotic},
};

} // namespace

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : registry)
            v.emplace_back(e.name);
        return v;
    }();
    return names;
}

bool is_scenario(const std::string& name)
{
    for (const auto& e : registry)
        if (name == e.name)
            return true;
    return false;
}

ScenarioReport run_scenario(const std::string& name, const ScenarioContext& ctx)
{
    const RegistryEntry* entry = nullptr;
    for (const auto& e : registry)
        if (name == e.name)
            entry = &e;
    if (!entry) {
        std::ostringstream msg;
        msg << "unknown scenario '" << name << "'; known scenarios:";
        for (const auto& e : registry)
            msg << ' ' << e.name;
        throw std::invalid_argument(msg.str());
    }
    set_worker_threads(ctx.threads > 0 ? ctx.threads : 1);
    Workbench wb(ctx);
    CheckList checks;
    entry->fn(ctx, wb, checks);
    ScenarioReport report;
    report.scenario = name;
    report.checks = std::move(checks.items);
    report.artifacts = std::move(wb.artifacts);
    return report;
}

ScenarioReport execute_run(const ScenarioContext& ctx)
{
    const std::string name = ctx.config.require_string("scenario");
    ScenarioReport report = run_scenario(name, ctx);
    Manifest manifest;
    manifest.scenario = report.scenario;
    manifest.seed = ctx.seed;
    manifest.threads = ctx.threads;
    manifest.config = ctx.config.entries();
    manifest.checks = report.checks;
    manifest.artifacts = report.artifacts;
    save_manifest(ctx.out_dir / "manifest.json", manifest);
    return report;
}

} // namespace mlnl
