#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mlnl/io.hpp"
#include "mlnl/run_config.hpp"

namespace mlnl {

/// Everything a scenario needs beyond its configuration: where to write,
/// the run seed for any randomized data, and the thread budget (already
/// applied; recorded in the manifest).
struct ScenarioContext {
    RunConfig config;
    std::filesystem::path out_dir;
    std::uint64_t seed = 0;
    int threads = 1;
};

/// What a scenario hands back: named verdicts (each carrying the measured
/// number and the threshold it was held against) plus the inventory of files
/// it wrote under the run directory.
struct ScenarioReport {
    std::string scenario;
    std::vector<CheckVerdict> checks;
    std::vector<ArtifactRecord> artifacts;

    bool passed() const
    {
        for (const auto& c : checks)
            if (!c.pass)
                return false;
        return true;
    }
};

/// Registry of runnable scenarios, in documentation order.
const std::vector<std::string>& scenario_names();
bool is_scenario(const std::string& name);

/// Runs one scenario.  Throws ConfigError / std::invalid_argument for
/// configuration problems (unknown name included, with the registry listed in
/// the message) and std::runtime_error when the numerics abort.
ScenarioReport run_scenario(const std::string& name, const ScenarioContext& ctx);

/// The whole run verb: read the scenario from the config, execute it, and
/// write manifest.json into the run directory.  Returns the report.
ScenarioReport execute_run(const ScenarioContext& ctx);

} // namespace mlnl
