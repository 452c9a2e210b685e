#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mlnl {

/// Configuration problem: unknown/duplicate/ill-typed key, or a required key
/// that is absent.  The message is already anchored ("file:line: ...") when a
/// source line is known; `key` names the offending entry.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, int line, const std::string& message)
        : std::invalid_argument(message), key_(std::move(key)), line_(line)
    {
    }
    const std::string& key() const { return key_; }
    int line() const { return line_; } // 0 when no source line applies

private:
    std::string key_;
    int line_;
};

/// Parsed dotted-key configuration.  The schema is closed: every key must be
/// one of the documented names (see schema_keys()), and values are stored
/// verbatim so a manifest can reproduce the file.  Typed accessors convert on
/// demand and throw ConfigError anchored to the defining line on bad syntax;
/// require_* additionally throw when the key is absent, naming it.
class RunConfig {
public:
    /// Parse `path`; errors mention the file name and 1-based line.
    static RunConfig parse_file(const std::filesystem::path& path);
    /// Parse from memory; `origin` stands in for the file name in messages.
    static RunConfig parse_text(std::string_view text, const std::string& origin = "<config>");
    /// Rebuild from a flat key/value map (a manifest's config echo).
    static RunConfig from_entries(const std::map<std::string, std::string>& entries);

    RunConfig() = default;

    bool has(const std::string& key) const;

    std::string require_string(const std::string& key) const;
    int require_int(const std::string& key) const;
    double require_double(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    int get_int(const std::string& key, int fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    /// Comma-separated strictly increasing positive integers.
    std::vector<std::int64_t> get_ladder(const std::string& key,
                                         std::vector<std::int64_t> fallback) const;

    /// All entries in key order (what the manifest stores).
    const std::map<std::string, std::string>& entries() const { return entries_; }

    /// The closed key set with one-line descriptions, for --help style output.
    static const std::vector<std::pair<std::string, std::string>>& schema_keys();

private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::string origin_ = "<config>";
    std::map<std::string, std::string> entries_;
    std::map<std::string, int> lines_;

    [[noreturn]] void fail(const std::string& key, const std::string& what) const;
    int line_of(const std::string& key) const;
};

} // namespace mlnl
