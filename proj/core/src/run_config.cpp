#include "mlnl/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mlnl {

namespace {

const std::vector<std::pair<std::string, std::string>> schema = {
    {"scenario", "scenario name from the registry"},
    {"grid.n", "space dimension (1, 2, or 3)"},
    {"grid.N", "cells per axis (grid spacing is 1/N)"},
    {"operator.s", "fractional order in (0,1)"},
    {"physics.gamma", "constant absorption exponent gamma > 0"},
    {"physics.gamma_profile", "variable exponent 'ramp:lo:hi' (lo at the boundary, hi at the center)"},
    {"physics.f", "forcing preset: zero | constant:V | power:A:B (t^-A dist^-B) | bump"},
    {"physics.u0", "initial-data preset: zero | constant:V | bump"},
    {"physics.T", "time horizon"},
    {"physics.tau", "time step"},
    {"physics.k", "truncation level when no ladder is given"},
    {"ladder", "comma-separated strictly increasing truncation levels"},
    {"run.scheme", "inner scheme: fixed_point | lagged"},
    {"output.dir", "run directory (the --out flag overrides)"},
    {"output.emit_plots", "write SVG plots (true/false)"},
    {"scan.refine", "also run once at 2N for stability ratios (true/false)"},
    {"scan.pairs", "number of ordered data pairs for comparison runs"},
    {"scan.plateau_tol", "relative gap allowed between the last two ladder rungs"},
    {"scan.exploratory", "also run the outside-the-zone mirror preset (true/false)"},
    {"scan.m", "declared space-time integrability class of the data"},
    {"scan.r", "declared time integrability of the data"},
    {"scan.q", "declared space integrability of the data"},
    {"strip.delta", "boundary-strip width for the variable-gamma validator"},
    {"strip.tau", "parabolic scaling of the validator strip"},
};

bool known_key(const std::string& k)
{
    for (const auto& [name, desc] : schema)
        if (name == k)
            return true;
    return false;
}

std::size_t edit_distance(const std::string& a, const std::string& b)
{
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j)
        prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string suggestion_for(const std::string& key)
{
    std::string best;
    std::size_t best_d = 3; // suggest only close misses
    for (const auto& [name, desc] : schema) {
        const std::size_t d = edit_distance(key, name);
        if (d < best_d) {
            best_d = d;
            best = name;
        }
    }
    return best;
}

std::string trim(std::string_view v)
{
    std::size_t b = 0, e = v.size();
    while (b < e && std::isspace(static_cast<unsigned char>(v[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(v[e - 1])))
        --e;
    return std::string(v.substr(b, e - b));
}

std::string anchored(const std::string& origin, int line, const std::string& msg)
{
    if (line > 0)
        return origin + ":" + std::to_string(line) + ": " + msg;
    return origin + ": " + msg;
}

} // namespace

const std::vector<std::pair<std::string, std::string>>& RunConfig::schema_keys()
{
    return schema;
}

RunConfig RunConfig::parse_text(std::string_view text, const std::string& origin)
{
    RunConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", lineno,
                              anchored(origin, lineno, "expected 'key = value', got '" + line +
                                                           "'"));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("", lineno, anchored(origin, lineno, "empty key"));
        if (!known_key(key)) {
            std::string msg = "unknown key '" + key + "'";
            if (const std::string hint = suggestion_for(key); !hint.empty())
                msg += " (did you mean '" + hint + "'?)";
            throw ConfigError(key, lineno, anchored(origin, lineno, msg));
        }
        if (cfg.entries_.count(key))
            throw ConfigError(key, lineno,
                              anchored(origin, lineno,
                                       "duplicate key '" + key + "' (first set on line " +
                                           std::to_string(cfg.lines_.at(key)) + ")"));
        if (value.empty())
            throw ConfigError(key, lineno,
                              anchored(origin, lineno, "key '" + key + "' has no value"));
        cfg.entries_[key] = value;
        cfg.lines_[key] = lineno;
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", 0, path.string() + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path.string());
}

RunConfig RunConfig::from_entries(const std::map<std::string, std::string>& entries)
{
    RunConfig cfg;
    cfg.origin_ = "<manifest>";
    for (const auto& [k, v] : entries) {
        if (!known_key(k))
            throw ConfigError(k, 0, "<manifest>: unknown key '" + k + "'");
        cfg.entries_[k] = v;
        cfg.lines_[k] = 0;
    }
    return cfg;
}

bool RunConfig::has(const std::string& key) const { return entries_.count(key) != 0; }

int RunConfig::line_of(const std::string& key) const
{
    const auto it = lines_.find(key);
    return it == lines_.end() ? 0 : it->second;
}

void RunConfig::fail(const std::string& key, const std::string& what) const
{
    const int line = line_of(key);
    throw ConfigError(key, line, anchored(origin_, line, what));
}

std::string RunConfig::require_string(const std::string& key) const
{
    const auto it = entries_.find(key);
    if (it == entries_.end())
        throw ConfigError(key, 0, origin_ + ": missing required key \"" + key + "\"");
    return it->second;
}

int RunConfig::require_int(const std::string& key) const
{
    const std::string v = require_string(key);
    try {
        std::size_t used = 0;
        const long parsed = std::stol(v, &used);
        if (used != v.size())
            throw std::invalid_argument("trailing characters");
        return static_cast<int>(parsed);
    } catch (const std::exception&) {
        fail(key, "key '" + key + "' needs an integer, got '" + v + "'");
    }
}

double RunConfig::require_double(const std::string& key) const
{
    const std::string v = require_string(key);
    try {
        std::size_t used = 0;
        const double parsed = std::stod(v, &used);
        if (used != v.size())
            throw std::invalid_argument("trailing characters");
        return parsed;
    } catch (const std::exception&) {
        fail(key, "key '" + key + "' needs a number, got '" + v + "'");
    }
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const
{
    return has(key) ? entries_.at(key) : fallback;
}

int RunConfig::get_int(const std::string& key, int fallback) const
{
    return has(key) ? require_int(key) : fallback;
}

double RunConfig::get_double(const std::string& key, double fallback) const
{
    return has(key) ? require_double(key) : fallback;
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const
{
    if (!has(key))
        return fallback;
    std::string v = entries_.at(key);
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    fail(key, "key '" + key + "' needs a boolean, got '" + entries_.at(key) + "'");
}

std::vector<std::int64_t> RunConfig::get_ladder(const std::string& key,
                                                std::vector<std::int64_t> fallback) const
{
    if (!has(key))
        return fallback;
    const std::string v = entries_.at(key);
    std::vector<std::int64_t> out;
    std::stringstream ss(v);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const std::string p = trim(part);
        try {
            std::size_t used = 0;
            const long long parsed = std::stoll(p, &used);
            if (used != p.size())
                throw std::invalid_argument("trailing characters");
            out.push_back(parsed);
        } catch (const std::exception&) {
            fail(key, "key '" + key + "' needs comma-separated integers, got '" + v + "'");
        }
    }
    if (out.empty())
        fail(key, "key '" + key + "' lists no levels");
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] < 1)
            fail(key, "key '" + key + "' has a level below 1");
        if (i > 0 && out[i] <= out[i - 1])
            fail(key, "key '" + key + "' must be strictly increasing");
    }
    return out;
}

} // namespace mlnl
