#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cfid {

inline constexpr const char* kToolName = "clusterfid";
inline constexpr const char* kToolVersion = "0.1.0";

// Provenance attached to every output: tool version, the fully resolved
// configuration (serialized JSON), the master seed, wall-clock bounds, and
// the files written. CSV embeds everything except the timestamps, so a
// rerun with the same manifest is byte-identical; JSON reports carry the
// timestamps too.
struct RunManifest {
    std::string version = kToolVersion;
    std::string command;
    std::string resolved_config;  // JSON text
    uint64_t master_seed = 0;
    std::string started_at;   // ISO-8601 UTC
    std::string finished_at;  // filled just before writing
    std::vector<std::string> outputs;
};

std::string utc_timestamp_now();

// Shortest-round-trip decimal with 17 significant digits, '.' decimal
// point, no locale dependence.
std::string format_double(double v);

// Comment block ("# key: value" lines) embedding the deterministic part of
// the manifest, placed ahead of the CSV header.
std::string csv_manifest_block(const RunManifest& manifest);

// One CSV row; doubles already formatted by format_double.
std::string csv_row(const std::vector<std::string>& cells);

// Writes content to path, creating parent directories; throws on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace cfid
