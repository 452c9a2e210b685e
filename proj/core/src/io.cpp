#include "mlnl/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mlnl {

namespace {

using nlohmann::json;

constexpr const char* layout_text =
    "row-major over interior nodes (1..N-1)^n, first axis slowest; zero boundary excluded";

std::uint64_t to_little_endian_bits(double v)
{
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t sw = 0;
        for (int b = 0; b < 8; ++b)
            sw |= ((bits >> (8 * b)) & 0xffu) << (8 * (7 - b));
        bits = sw;
    }
    return bits;
}

double from_little_endian_bits(std::uint64_t bits)
{
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t sw = 0;
        for (int b = 0; b < 8; ++b)
            sw |= ((bits >> (8 * b)) & 0xffu) << (8 * (7 - b));
        bits = sw;
    }
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

std::string format_cell(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    return j;
}

} // namespace

std::filesystem::path write_snapshot(const std::filesystem::path& base, const Grid& grid,
                                     const std::vector<double>& field, const SnapshotInfo& info)
{
    if (field.size() != static_cast<std::size_t>(grid.node_count()))
        throw std::invalid_argument("write_snapshot: field size does not match grid");

    std::filesystem::path data = base;
    data += ".f64";
    {
        std::ofstream out(data, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + data.string() + " for writing");
        for (double v : field) {
            const std::uint64_t bits = to_little_endian_bits(v);
            out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
        }
        if (!out)
            throw std::runtime_error("short write to " + data.string());
    }

    json side;
    side["dtype"] = "float64";
    side["byte_order"] = "little-endian";
    side["layout"] = layout_text;
    side["n"] = info.n > 0 ? info.n : grid.dim;
    side["N"] = info.N > 0 ? info.N : grid.cells_per_axis;
    side["count"] = grid.node_count();
    side["s"] = info.s;
    side["k"] = info.k;
    side["step"] = info.step;
    side["tau"] = info.tau;
    side["time"] = info.time;

    std::filesystem::path meta = base;
    meta += ".json";
    std::ofstream out(meta, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + meta.string() + " for writing");
    out << side.dump(2) << '\n';
    return data;
}

std::pair<std::vector<double>, SnapshotInfo> read_snapshot(const std::filesystem::path& base)
{
    std::filesystem::path meta = base;
    meta += ".json";
    const json side = read_json_file(meta);

    SnapshotInfo info;
    try {
        info.n = side.at("n").get<int>();
        info.N = side.at("N").get<int>();
        info.s = side.at("s").get<double>();
        info.k = side.at("k").get<std::int64_t>();
        info.step = side.at("step").get<std::int64_t>();
        info.tau = side.at("tau").get<double>();
        info.time = side.at("time").get<double>();
    } catch (const json::exception& e) {
        throw std::runtime_error(meta.string() + ": " + e.what());
    }

    std::filesystem::path data = base;
    data += ".f64";
    std::ifstream in(data, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + data.string());
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::int64_t>(in.tellg());
    in.seekg(0);
    if (bytes < 0 || bytes % 8 != 0)
        throw std::runtime_error(data.string() + ": size is not a whole number of float64");

    std::int64_t expected = 1;
    for (int d = 0; d < info.n; ++d)
        expected *= info.N - 1;
    if (bytes / 8 != expected)
        throw std::runtime_error(data.string() + ": element count disagrees with the sidecar");

    std::vector<double> field(static_cast<std::size_t>(expected));
    for (auto& v : field) {
        std::uint64_t bits;
        in.read(reinterpret_cast<char*>(&bits), sizeof bits);
        v = from_little_endian_bits(bits);
    }
    if (!in)
        throw std::runtime_error("short read from " + data.string());
    return {std::move(field), info};
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::trunc), width_(header.size())
{
    if (!out_)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    if (header.empty())
        throw std::invalid_argument("CsvWriter: header must not be empty");
    for (std::size_t i = 0; i < header.size(); ++i)
        out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

CsvWriter::~CsvWriter()
{
    if (open_)
        out_.flush();
}

void CsvWriter::row(const std::vector<double>& cells)
{
    if (!open_)
        throw std::logic_error("CsvWriter: row() after close()");
    if (cells.size() != width_)
        throw std::invalid_argument("CsvWriter: row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << (i ? "," : "") << format_cell(cells[i]);
    out_ << '\n';
    ++rows_;
}

void CsvWriter::close()
{
    if (!open_)
        return;
    out_.flush();
    out_.close();
    open_ = false;
    if (out_.fail())
        throw std::runtime_error("failed to finish writing " + path_.string());
}

bool Manifest::all_passed() const
{
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

void save_manifest(const std::filesystem::path& path, const Manifest& m)
{
    json j;
    j["format"] = 1;
    j["scenario"] = m.scenario;
    j["seed"] = m.seed;
    j["threads"] = m.threads;
    j["config"] = m.config;

    j["checks"] = json::array();
    for (const auto& c : m.checks) {
        json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["measured"] = c.measured;
        jc["threshold"] = c.threshold;
        jc["comparison"] = c.comparison;
        if (!c.note.empty())
            jc["note"] = c.note;
        j["checks"].push_back(jc);
    }

    j["artifacts"] = json::array();
    for (const auto& a : m.artifacts) {
        json ja;
        ja["path"] = a.path;
        ja["rows"] = a.rows;
        ja["bytes"] = a.bytes;
        j["artifacts"].push_back(ja);
    }

    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("short write to " + path.string());
}

Manifest load_manifest(const std::filesystem::path& path)
{
    const json j = read_json_file(path);
    Manifest m;
    try {
        m.scenario = j.at("scenario").get<std::string>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.threads = j.at("threads").get<int>();
        m.config = j.at("config").get<std::map<std::string, std::string>>();
        for (const auto& jc : j.at("checks")) {
            CheckVerdict c;
            c.name = jc.at("name").get<std::string>();
            c.pass = jc.at("pass").get<bool>();
            c.measured = jc.at("measured").get<double>();
            c.threshold = jc.at("threshold").get<double>();
            c.comparison = jc.at("comparison").get<std::string>();
            if (jc.contains("note"))
                c.note = jc.at("note").get<std::string>();
            m.checks.push_back(std::move(c));
        }
        for (const auto& ja : j.at("artifacts")) {
            ArtifactRecord a;
            a.path = ja.at("path").get<std::string>();
            a.rows = ja.at("rows").get<std::int64_t>();
            a.bytes = ja.at("bytes").get<std::int64_t>();
            m.artifacts.push_back(std::move(a));
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    return m;
}

} // namespace mlnl
