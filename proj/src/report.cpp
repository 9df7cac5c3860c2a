#include "rwrs/report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "rwrs/rng.hpp"

namespace rwrs {

std::string format_float(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string walk_csv(const WalkPath& path) {
    std::string out = "step,position\n";
    for (std::size_t k = 0; k < path.positions.size(); ++k) {
        out += std::to_string(k);
        out += ',';
        out += std::to_string(path.positions[k]);
        out += '\n';
    }
    return out;
}

std::string scenery_csv(Scenery& scenery, std::int64_t lo, std::int64_t hi) {
    std::string out = "site,value\n";
    for (std::int64_t site = lo; site <= hi; ++site) {
        out += std::to_string(site);
        out += ',';
        out += format_float(scenery.value(site));
        out += '\n';
    }
    return out;
}

std::string rwrs_csv(const RwrsPath& z) {
    std::string out = "step,z\n";
    for (std::size_t k = 0; k < z.values.size(); ++k) {
        out += std::to_string(k);
        out += ',';
        out += format_float(z.values[k]);
        out += '\n';
    }
    return out;
}

std::string local_time_csv(const StepFunction& f, double mesh) {
    std::string out = "cell_index,value\n";
    const auto& edges = f.edges();
    const auto& values = f.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::int64_t cell = static_cast<std::int64_t>(std::llround(edges[i] / mesh));
        out += std::to_string(cell);
        out += ',';
        out += format_float(values[i]);
        out += '\n';
    }
    return out;
}

std::string digest_bytes(const std::string& bytes) {
    const std::uint64_t digest = fnv1a64(bytes.data(), bytes.size());
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(digest));
    return buf;
}

std::string iso_timestamp() {
    std::time_t stamp = 0;
    if (const char* pinned = std::getenv("SOURCE_DATE_EPOCH")) {
        errno = 0;
        char* end = nullptr;
        const long long value = std::strtoll(pinned, &end, 10);
        if (errno == 0 && end != pinned && *end == '\0')
            stamp = static_cast<std::time_t>(value);
    } else {
        stamp = std::time(nullptr);
    }
    std::tm parts{};
    gmtime_r(&stamp, &parts);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open for reading: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::ios_base::failure("read failed: " + path);
    return buffer.str();
}

nlohmann::ordered_json config_echo_json(const ParsedConfig& parsed) {
    using json = nlohmann::ordered_json;
    const ExperimentConfig& c = parsed.experiment;

    json walk;
    if (c.walk.kind == WalkKind::correlated_gaussian) {
        walk["kind"] = "correlated";
        walk["hurst"] = c.walk.hurst;
    } else if (c.walk.simple_symmetric) {
        walk["kind"] = "simple";
    } else {
        walk["kind"] = "stable";
        walk["alpha"] = c.walk.step_law.index;
        walk["sigma"] = c.walk.step_law.scale;
        walk["skewness"] = c.walk.step_law.skewness;
    }

    json scenery;
    if (c.scenery.kind == SceneryKind::iid_stable) {
        scenery["kind"] = "iid";
        scenery["beta"] = c.scenery.marginal.index;
        scenery["sigma"] = c.scenery.marginal.scale;
        scenery["skewness"] = c.scenery.marginal.skewness;
    } else {
        scenery["kind"] = "moving_average";
        if (c.scenery.kernel.kind == KernelKind::summable) {
            scenery["kernel"] = "summable";
            scenery["coeffs"] = c.scenery.kernel.coeffs;
            scenery["min_lag"] = c.scenery.kernel.min_lag;
        } else {
            scenery["kernel"] = "power_decay";
            scenery["decay"] = c.scenery.kernel.decay;
            scenery["p_plus"] = c.scenery.kernel.p_plus;
            scenery["p_minus"] = c.scenery.kernel.p_minus;
            scenery["radius"] = c.scenery.kernel.radius;
        }
        scenery["innovation_std"] = c.scenery.innovation_std;
    }

    json experiment;
    experiment["n_grid"] = c.n_grid;
    experiment["replicates"] = c.replicates;
    experiment["t_grid"] = c.effective_t_grid();
    experiment["weights"] = c.effective_weights();
    experiment["p"] = c.p;
    experiment["walker_counts"] = c.walker_counts;
    experiment["delta_grid"] = c.delta_grid;
    experiment["window"] = c.window;
    experiment["seed"] = c.seed;
    experiment["threads"] = c.threads;
    experiment["identity_tolerance"] = c.identity_tolerance;
    experiment["scaling_tolerance"] = c.scaling_tolerance;
    experiment["h_grid"] = parsed.h_grid;

    json echo;
    echo["schema"] = parsed.schema;
    echo["walk"] = walk;
    echo["scenery"] = scenery;
    echo["experiment"] = experiment;
    return echo;
}

nlohmann::ordered_json RunManifest::to_json() const {
    using json = nlohmann::ordered_json;
    json out;
    out["tool"] = "rwrs";
    out["version"] = kToolVersion;
    out["schema"] = config.schema;
    out["seed"] = seed;
    out["started_at"] = started_at;
    out["finished_at"] = finished_at;
    out["config"] = config_echo_json(config);
    json inventory = json::array();
    for (const FileRecord& f : files) {
        json row;
        row["file"] = f.name;
        row["bytes"] = f.bytes;
        row["digest"] = f.digest;
        inventory.push_back(row);
    }
    out["files"] = inventory;
    return out;
}

} // namespace rwrs
