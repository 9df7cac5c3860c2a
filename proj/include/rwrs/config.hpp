#pragma once

#include <stdexcept>
#include <string>

#include "rwrs/experiments.hpp"

namespace rwrs {

/// Parse or validation failure, anchored to a config line.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& source, int line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
          line_(line) {}

    int line() const { return line_; }

  private:
    int line_ = 0;
};

/// A full batch description as read from disk.
struct ParsedConfig {
    std::string schema;
    ExperimentConfig experiment;
    std::vector<double> h_grid{0.015625, 0.0009765625, 6.103515625e-05}; // rs2 meshes
};

/// Strict TOML subset: [walk] / [scenery] / [experiment] sections, scalar and
/// single-line array values, '#' comments.  Unknown sections or keys are hard
/// errors; so are duplicates and type mismatches.  `source` names the input
/// in error messages.
ParsedConfig parse_config(const std::string& text, const std::string& source = "<config>");

/// Read and parse; file-system failures raise std::ios_base::failure.
ParsedConfig load_config(const std::string& path);

/// The schema identifier this build accepts.
inline constexpr const char* kConfigSchema = "rwrs/1";

} // namespace rwrs
