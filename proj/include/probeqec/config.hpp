#pragma once

#include <optional>
#include <string>

#include "probeqec/experiments.hpp"

namespace probeqec {

// Config file syntax errors / validation failures, with "file:line:" prefix.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParsedConfig {
    ExperimentConfig experiment;
    std::optional<SweepAxis> sweep_axis;
    bool seed_was_set = false;  // whether the file provided experiment.seed
};

// Flat key = value format with [section] headers and '#' comments:
//
//   [experiment]   code, syndrome_mode, trials, seed, input, erasure_n
//   [probe]        alpha, theta, eta2, backend
//   [noise]        p_x, p_z, p_loss, theta_jitter, schedule, ancilla_eps
//   [sweep]        axis, values (comma-separated)
//
// Unknown sections/keys and out-of-range values throw ConfigError anchored to
// the offending line. See docs/config.md for the full schema.
ParsedConfig parse_config_text(const std::string& text, const std::string& filename);
ParsedConfig parse_config_file(const std::string& path);  // ConfigError / std::ios on I/O

}  // namespace probeqec
