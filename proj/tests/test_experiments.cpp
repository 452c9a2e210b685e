#include "mlnl/experiments.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace mlnl;
namespace fs = std::filesystem;

namespace {

struct ScopedDir {
    fs::path path;
    explicit ScopedDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("mlnl_scenario_" + tag))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~ScopedDir() { fs::remove_all(path); }
};

ScenarioContext context(const std::string& config_text, const fs::path& dir)
{
    ScenarioContext ctx;
    ctx.config = RunConfig::parse_text(config_text);
    ctx.out_dir = dir;
    ctx.seed = 7;
    ctx.threads = 2;
    return ctx;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has_artifact(const ScenarioReport& rep, const std::string& name)
{
    for (const auto& a : rep.artifacts)
        if (a.path == name)
            return true;
    return false;
}

} // namespace

TEST_SUITE("experiments")
{
    TEST_CASE("registry lists every scenario once")
    {
        const std::vector<std::string> expected = {
            "manufactured_convergence", "monotone_ladder", "comparison_principle",
            "positivity_floor",         "bounded_data",    "aronson_serrin",
            "summability_scan",         "variable_gamma",  "asymptotic_steady"};
        CHECK(scenario_names() == expected);
        for (const auto& name : expected)
            CHECK(is_scenario(name));
        CHECK_FALSE(is_scenario("frobnicate"));
    }

    TEST_CASE("unknown scenario is refused with the registry in the message")
    {
        ScopedDir dir("unknown");
        try {
            run_scenario("frobnicate", context("grid.N = 8\n", dir.path));
            FAIL("expected invalid_argument");
        } catch (const std::invalid_argument& e) {
            const std::string msg = e.what();
            CHECK(msg.find("frobnicate") != std::string::npos);
            CHECK(msg.find("monotone_ladder") != std::string::npos);
        }
    }

    TEST_CASE("scenario preconditions are argument errors")
    {
        ScopedDir dir("precond");
        CHECK_THROWS_AS(run_scenario("manufactured_convergence",
                                     context("grid.n = 2\ngrid.N = 8\n", dir.path)),
                        std::invalid_argument);
        CHECK_THROWS_AS(run_scenario("summability_scan",
                                     context("grid.n = 1\ngrid.N = 8\n", dir.path)),
                        std::invalid_argument);
        CHECK_THROWS_AS(run_scenario("bounded_data",
                                     context("physics.f = power:1:0.5\n", dir.path)),
                        std::invalid_argument);
        CHECK_THROWS_AS(run_scenario("variable_gamma",
                                     context("physics.gamma_profile = ramp:1.2:2\n", dir.path)),
                        std::invalid_argument);
    }

    TEST_CASE("comparison pairs run end to end and write a manifest")
    {
        ScopedDir dir("compare");
        const auto ctx = context("scenario = comparison_principle\n"
                                 "grid.N = 8\n"
                                 "physics.T = 0.02\n"
                                 "physics.tau = 0.01\n"
                                 "physics.k = 4\n"
                                 "scan.pairs = 2\n",
                                 dir.path);
        const ScenarioReport rep = execute_run(ctx);
        CHECK(rep.scenario == "comparison_principle");
        CHECK(rep.passed());
        REQUIRE(rep.checks.size() == 2);
        CHECK(rep.checks[0].name == "pair_0_ordered");
        CHECK(has_artifact(rep, "pairs.csv"));

        const Manifest m = load_manifest(dir.path / "manifest.json");
        CHECK(m.scenario == "comparison_principle");
        CHECK(m.seed == 7);
        CHECK(m.threads == 2);
        CHECK(m.config.at("grid.N") == "8");
        CHECK(m.checks.size() == rep.checks.size());
        CHECK(m.all_passed());
    }

    TEST_CASE("a small ladder passes and reruns bit for bit")
    {
        const std::string text = "scenario = monotone_ladder\n"
                                 "grid.N = 16\n"
                                 "physics.T = 0.02\n"
                                 "physics.tau = 0.01\n"
                                 "ladder = 1, 2, 4\n";
        ScopedDir a("ladder_a");
        ScopedDir b("ladder_b");
        const ScenarioReport ra = execute_run(context(text, a.path));
        const ScenarioReport rb = execute_run(context(text, b.path));
        CHECK(ra.passed());
        for (const char* f : {"ladder.csv", "increments.csv", "diagnostics.csv",
                              "k1_first.f64", "k4_last.f64", "ladder.svg", "manifest.json"}) {
            INFO(f);
            CHECK(fs::exists(a.path / f));
            CHECK(slurp(a.path / f) == slurp(b.path / f));
        }
        const Manifest m = load_manifest(a.path / "manifest.json");
        for (const auto& art : m.artifacts)
            if (art.path == "ladder.csv")
                CHECK(art.rows == 3);
    }

    TEST_CASE("plots can be switched off")
    {
        ScopedDir dir("noplots");
        const ScenarioReport rep = execute_run(context("scenario = monotone_ladder\n"
                                                       "grid.N = 8\n"
                                                       "physics.T = 0.02\n"
                                                       "physics.tau = 0.01\n"
                                                       "ladder = 1, 2\n"
                                                       "output.emit_plots = false\n",
                                                       dir.path));
        CHECK(rep.passed());
        for (const auto& art : rep.artifacts)
            CHECK(art.path.find(".svg") == std::string::npos);
        CHECK_FALSE(fs::exists(dir.path / "ladder.svg"));
    }

    TEST_CASE("zero forcing makes the steady-state run trivially consistent")
    {
        ScopedDir dir("steady0");
        const ScenarioReport rep = execute_run(context("scenario = asymptotic_steady\n"
                                                       "grid.N = 8\n"
                                                       "physics.f = zero\n"
                                                       "physics.u0 = zero\n"
                                                       "physics.T = 0.1\n"
                                                       "physics.tau = 0.025\n"
                                                       "physics.k = 4\n",
                                                       dir.path));
        CHECK(rep.passed());
        CHECK(has_artifact(rep, "steady_state.f64"));
        CHECK(has_artifact(rep, "parabolic_final.f64"));
        CHECK_FALSE(fs::exists(dir.path / "approach.svg"));
        const auto [w, winfo] = read_snapshot(dir.path / "steady_state");
        for (double v : w)
            CHECK(v == 0.0);
    }

    TEST_CASE("execute_run needs a scenario key")
    {
        ScopedDir dir("nokey");
        CHECK_THROWS_AS(execute_run(context("grid.N = 8\n", dir.path)), ConfigError);
    }
}
