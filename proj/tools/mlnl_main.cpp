// Command line driver: run scenarios, summarize finished run directories,
// print exponent charts, and benchmark the fractional operator against its
// closed-form profile.
//
// Exit codes: 0 all checks passed, 1 at least one check failed, 2 bad usage
// or configuration, 3 numerical abort mid-run.

#include "mlnl/experiments.hpp"
#include "mlnl/exponents.hpp"
#include "mlnl/fractional_kernel.hpp"
#include "mlnl/grid.hpp"
#include "mlnl/io.hpp"
#include "mlnl/operators.hpp"
#include "mlnl/parallel.hpp"
#include "mlnl/quadrature_oracle.hpp"
#include "mlnl/run_config.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace mlnl;

namespace {

void print_checks(const std::vector<CheckVerdict>& checks)
{
    int passed = 0;
    for (const auto& c : checks) {
        char line[256];
        std::snprintf(line, sizeof line, "  [%s] %-28s measured %-12.6g %s %.6g",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                      c.comparison.c_str(), c.threshold);
        std::cout << line;
        if (!c.note.empty())
            std::cout << "  (" << c.note << ")";
        std::cout << "\n";
        passed += c.pass ? 1 : 0;
    }
    std::cout << checks.size() << " checks, " << passed << " passed\n";
}

int do_run(const std::string& config_path, std::string out_dir, std::uint64_t seed, int threads)
{
    try {
        ScenarioContext ctx;
        ctx.config = RunConfig::parse_file(config_path);
        if (out_dir.empty())
            out_dir = ctx.config.get_string("output.dir", "run");
        ctx.out_dir = out_dir;
        ctx.seed = seed;
        ctx.threads = threads;
        const ScenarioReport rep = execute_run(ctx);
        std::cout << "scenario: " << rep.scenario << "\n";
        print_checks(rep.checks);
        std::cout << rep.artifacts.size() << " artifacts under " << out_dir << "\n";
        return rep.passed() ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    }
}

std::int64_t count_data_rows(const fs::path& file)
{
    std::ifstream in(file, std::ios::binary);
    std::int64_t lines = 0;
    char c;
    while (in.get(c))
        if (c == '\n')
            ++lines;
    return lines - 1; // header
}

int do_report(const std::string& out_dir)
{
    Manifest m;
    try {
        m = load_manifest(fs::path(out_dir) / "manifest.json");
    } catch (const std::exception& e) {
        std::cerr << "cannot read manifest: " << e.what() << "\n";
        return 2;
    }
    std::cout << "scenario: " << m.scenario << "  (seed " << m.seed << ", " << m.threads
              << (m.threads == 1 ? " thread)" : " threads)") << "\n";
    print_checks(m.checks);
    for (const auto& a : m.artifacts) {
        const fs::path file = fs::path(out_dir) / a.path;
        if (!fs::exists(file)) {
            std::cout << "WARNING: " << a.path << " is missing\n";
            continue;
        }
        if (static_cast<std::int64_t>(fs::file_size(file)) != a.bytes)
            std::cout << "WARNING: " << a.path << " is " << fs::file_size(file)
                      << " bytes, the manifest recorded " << a.bytes
                      << " (changed since the run?)\n";
        if (a.rows >= 0) {
            const std::int64_t rows = count_data_rows(file);
            if (rows != a.rows)
                std::cout << "WARNING: " << a.path << " has " << rows
                          << " data rows, the manifest recorded " << a.rows
                          << " (changed since the run?)\n";
        }
    }
    std::cout << m.artifacts.size() << " artifacts\n";
    return m.all_passed() ? 0 : 1;
}

void print_flag(const char* name, bool value) { std::printf("%-24s %s\n", name, value ? "yes" : "no"); }

void print_value(const char* name, double v, bool valid = true, const char* why = "")
{
    if (valid)
        std::printf("%-24s %.17g\n", name, v);
    else
        std::printf("%-24s (not defined: %s)\n", name, why);
}

int do_exponents(int n, double gamma, double m, double r, double q)
{
    ExponentReport rep;
    try {
        rep = exponents(n, gamma, m, r, q);
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad inputs: " << e.what() << "\n";
        return 2;
    }
    std::printf("inputs: n=%d gamma=%.17g m=%.17g r=%.17g q=%.17g\n", n, gamma, m, r, q);
    print_value("m_bar", rep.m_bar);
    print_value("q_bar", rep.q_bar, rep.q_bar_valid, "denominator vanishes");
    print_value("sigma_L", rep.sigma_L, rep.sigma_L_valid, "formula out of range");
    print_value("sigma_energy", rep.sigma_energy);
    print_flag("sigma_energy >= 2", rep.sigma_energy_at_least_two);
    print_flag("aronson_serrin", rep.aronson_serrin);
    print_flag("outside_zone", rep.outside_zone);
    if (rep.outside_zone) {
        std::printf("%-24s %d\n", "outside_branch", rep.outside_branch);
        print_value("outside_zone_sigma", rep.outside_zone_sigma, rep.outside_zone_sigma_valid,
                    "denominator vanishes");
        print_flag("side_condition_required", rep.side_condition_required);
        if (rep.side_condition_required)
            print_flag("side_condition_holds", rep.side_condition_holds);
    }
    for (const auto& note : rep.notes)
        std::printf("note: %s\n", note.c_str());
    return 0;
}

int do_oracle(int N, double s, int threads)
{
    try {
        set_worker_threads(threads);
        const Grid grid = make_grid(1, N);
        const auto t0 = std::chrono::steady_clock::now();
        const OperatorMatrix op = assemble_fractional_laplacian(grid, s);
        const auto t1 = std::chrono::steady_clock::now();
        Field u(static_cast<std::size_t>(grid.node_count()));
        for (std::int64_t i = 0; i < grid.node_count(); ++i)
            u[static_cast<std::size_t>(i)] = scaled_ball_profile(grid.coordinates(i)[0], s);
        const Field image = op.apply(u);
        const auto t2 = std::chrono::steady_clock::now();

        const double expected = std::pow(2.0, 2.0 * s) * ball_profile_constant(1, s);
        double worst = 0.0;
        for (std::int64_t i = 0; i < grid.node_count(); ++i) {
            const double x = grid.coordinates(i)[0];
            if (std::abs(x - 0.5) > 0.2)
                continue;
            worst = std::max(worst,
                             std::abs(image[static_cast<std::size_t>(i)] - expected) / expected);
        }
        const auto ms = [](auto a, auto b) {
            return std::chrono::duration<double, std::milli>(b - a).count();
        };
        std::printf("profile (1-|2x-1|^2)^s, N=%d, s=%.17g\n", N, s);
        std::printf("exact interior image    %.17g\n", expected);
        std::printf("worst central deviation %.3e (relative, |x-1/2| <= 0.2)\n", worst);
        std::printf("assembly %.1f ms, apply %.1f ms\n", ms(t0, t1), ms(t1, t2));
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad inputs: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mixed local/nonlocal singular parabolic laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    int threads = 1;

    CLI::App* run = app.add_subcommand("run", "execute a scenario from a config file");
    run->add_option("--config", config_path, "configuration file (key = value lines)")
        ->required();
    run->add_option("--out", out_dir,
                    "run directory (default: the config's output.dir, else ./run)");
    run->add_option("--threads", threads, "worker threads");
    run->add_option("--seed", seed, "seed for randomized scenario data");

    CLI::App* report = app.add_subcommand("report", "summarize a finished run directory");
    report->add_option("--out", out_dir, "run directory containing manifest.json")->required();

    int exp_n = 3;
    double exp_gamma = 1.0, exp_m = 1.0, exp_r = 2.0, exp_q = 2.0;
    CLI::App* expo =
        app.add_subcommand("exponents", "print the exponent chart for (n, gamma, m, r, q)");
    expo->add_option("--n", exp_n, "space dimension (> 2)")->required();
    expo->add_option("--gamma", exp_gamma, "singularity exponent")->required();
    expo->add_option("--m", exp_m, "forcing Lebesgue class L^m");
    expo->add_option("--r", exp_r, "time exponent of the mixed class");
    expo->add_option("--q", exp_q, "space exponent of the mixed class");

    int oracle_N = 512;
    double oracle_s = 0.5;
    CLI::App* oracle = app.add_subcommand(
        "oracle", "apply the assembled fractional operator to its closed-form profile");
    oracle->add_option("--N", oracle_N, "cells per axis");
    oracle->add_option("--s", oracle_s, "fractional order in (0,1)");
    oracle->add_option("--threads", threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (run->parsed())
        return do_run(config_path, out_dir, seed, threads);
    if (report->parsed())
        return do_report(out_dir);
    if (expo->parsed())
        return do_exponents(exp_n, exp_gamma, exp_m, exp_r, exp_q);
    return do_oracle(oracle_N, oracle_s, threads);
}
