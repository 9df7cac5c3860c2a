#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "rwrs/config.hpp"
#include "rwrs/rwrs_process.hpp"
#include "rwrs/scenery.hpp"
#include "rwrs/step_function.hpp"
#include "rwrs/walks.hpp"

namespace rwrs {

inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest-width %.17g rendering; round-trips to the same double.
std::string format_float(double x);

std::string walk_csv(const WalkPath& path);
std::string scenery_csv(Scenery& scenery, std::int64_t lo, std::int64_t hi);
std::string rwrs_csv(const RwrsPath& z);
/// Cells of a step function living on a lattice of the given mesh.
std::string local_time_csv(const StepFunction& f, double mesh);

/// FNV-1a over a byte string, rendered as "fnv1a64:<16 hex digits>".
std::string digest_bytes(const std::string& bytes);

/// UTC timestamp, ISO 8601.  Honours SOURCE_DATE_EPOCH for reproducible runs.
std::string iso_timestamp();

/// Atomic-ish text emission: writes and flushes, raising std::ios_base::failure
/// on any stream error.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// The config echo embedded in manifests and reports.
nlohmann::ordered_json config_echo_json(const ParsedConfig& parsed);

struct FileRecord {
    std::string name;
    std::uint64_t bytes = 0;
    std::string digest;
};

struct RunManifest {
    ParsedConfig config;
    std::uint64_t seed = 0;
    std::string started_at;
    std::string finished_at;
    std::vector<FileRecord> files;

    nlohmann::ordered_json to_json() const;
};

} // namespace rwrs
