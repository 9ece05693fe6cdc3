#pragma once

// Table serialization (CSV primary, JSON mirror), content digests, and the
// run manifest. Numbers in data files use plain scientific/positional
// notation with 6 significant digits; a units row always follows the header
// row. Output is deterministic: identical inputs produce byte-identical
// table files (the manifest additionally carries a timestamp).

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ionex/version.hpp"

namespace ionex {

inline std::string format_sig6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string format_full(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::string> units;  // one entry per column
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != columns.size())
            throw std::invalid_argument("Table: row width does not match header");
        rows.push_back(std::move(cells));
    }
};

inline std::string to_csv(const Table& t) {
    if (t.units.size() != t.columns.size())
        throw std::invalid_argument("to_csv: units row must match header width");
    std::ostringstream os;
    const auto line = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << '\n';
    };
    line(t.columns);
    line(t.units);
    for (const auto& row : t.rows) line(row);
    return os.str();
}

// JSON mirror of the same records: identical cell strings, same order.
inline nlohmann::ordered_json to_json(const Table& t) {
    nlohmann::ordered_json j;
    j["name"] = t.name;
    j["columns"] = t.columns;
    j["units"] = t.units;
    j["rows"] = t.rows;
    return j;
}

// Fixed-width human-readable rendering (the --paper-style view).
inline std::string to_pretty(const Table& t) {
    std::vector<std::size_t> width(t.columns.size(), 0);
    const auto grow = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            width[i] = std::max(width[i], cells[i].size());
    };
    grow(t.columns);
    grow(t.units);
    for (const auto& row : t.rows) grow(row);

    std::ostringstream os;
    os << "# " << t.name << '\n';
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << "  ";
            os << cells[i];
            for (std::size_t pad = cells[i].size(); pad < width[i]; ++pad) os << ' ';
        }
        os << '\n';
    };
    line(t.columns);
    line(t.units);
    for (const auto& row : t.rows) line(row);
    return os.str();
}

// ---------------------------------------------------------------------------
// FNV-1a 64-bit content digest (regression tripwire, not a security hash).

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const char ch : bytes) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

inline std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_file: cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_file: cannot open " + path);
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os.good()) throw std::runtime_error("write_file: write failed for " + path);
}

inline std::string file_digest(const std::string& path) { return fnv1a64_hex(read_file(path)); }

// ---------------------------------------------------------------------------
// Run manifest: tool version, config echo, and a digest for every file the
// run wrote.

struct ManifestEntry {
    std::string path;    // as written (relative to the output directory)
    std::string kind;    // "table" | "wavefunction" | "summary"
    std::string digest;  // fnv1a64 hex of the file content
    std::size_t bytes = 0;
};

inline std::string iso8601_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
#if defined(_WIN32)
    gmtime_s(&tm, &now);
#else
    gmtime_r(&now, &tm);
#endif
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::ordered_json manifest_json(const std::string& command,
                                            const nlohmann::ordered_json& config_echo,
                                            const std::vector<ManifestEntry>& entries) {
    nlohmann::ordered_json j;
    j["tool"] = "ionex";
    j["version"] = version_string;
    j["command"] = command;
    j["generated_at"] = iso8601_utc_now();
    j["config"] = config_echo;
    j["outputs"] = nlohmann::ordered_json::array();
    for (const ManifestEntry& e : entries) {
        nlohmann::ordered_json o;
        o["path"] = e.path;
        o["kind"] = e.kind;
        o["fnv1a64"] = e.digest;
        o["bytes"] = e.bytes;
        j["outputs"].push_back(o);
    }
    return j;
}

}  // namespace ionex
