#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "mlnl/grid.hpp"

namespace mlnl {

/// Sidecar metadata stored next to every binary snapshot.  k/step are -1 and
/// tau/time 0 for fields that are not trajectory slices (steady states,
/// forcing profiles).
struct SnapshotInfo {
    int n = 0;
    int N = 0;          // cells per axis
    double s = 0.0;     // fractional order of the run, 0 if not applicable
    std::int64_t k = -1;
    std::int64_t step = -1;
    double tau = 0.0;
    double time = 0.0;
};

/// Writes `<base>.f64` (flat little-endian IEEE float64, row-major with the
/// first axis slowest — the grid's flatten order) and `<base>.json`
/// describing the layout, so external tools can read the field without this
/// codebase.  Returns the data-file path.
std::filesystem::path write_snapshot(const std::filesystem::path& base, const Grid& grid,
                                     const std::vector<double>& field, const SnapshotInfo& info);

/// Reads a snapshot pair written by write_snapshot; validates the element
/// count against the sidecar's grid shape.  Throws std::runtime_error on
/// missing or inconsistent files.
std::pair<std::vector<double>, SnapshotInfo> read_snapshot(const std::filesystem::path& base);

/// Line-oriented CSV emitter with deterministic number formatting (%.17g):
/// the same rows always produce the same bytes, which is what makes re-run
/// diffing meaningful.  Numeric-only cells by design.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    ~CsvWriter();

    void row(const std::vector<double>& cells);
    /// Data rows written so far (header excluded).
    std::int64_t rows() const { return rows_; }
    const std::filesystem::path& path() const { return path_; }
    /// Flush and close; further rows are a logic error.
    void close();

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t width_ = 0;
    std::int64_t rows_ = 0;
    bool open_ = true;
};

/// One pass/fail verdict inside a run manifest.  `comparison` is the
/// operator the check applied, e.g. "<=" for measured <= threshold.
struct CheckVerdict {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string comparison = "<=";
    std::string note;
};

/// One produced file.  rows is the CSV data-row count, -1 for non-CSV
/// artifacts; bytes is the on-disk size when recorded.
struct ArtifactRecord {
    std::string path; // relative to the run directory
    std::int64_t rows = -1;
    std::int64_t bytes = -1;
};

/// Everything needed to reconstruct and audit a run: the flattened
/// configuration, the verdicts with their thresholds, and the artifact
/// inventory used for integrity checks.
struct Manifest {
    std::string scenario;
    std::uint64_t seed = 0;
    int threads = 1;
    std::map<std::string, std::string> config;
    std::vector<CheckVerdict> checks;
    std::vector<ArtifactRecord> artifacts;

    bool all_passed() const;
};

void save_manifest(const std::filesystem::path& path, const Manifest& m);
Manifest load_manifest(const std::filesystem::path& path);

} // namespace mlnl
