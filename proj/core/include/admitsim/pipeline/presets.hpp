#pragma once

#include <string>
#include <vector>

#include "admitsim/pipeline/config.hpp"

namespace admitsim::pipeline {

/// Names of the shipped presets: paper-like, truthful and recovery.
std::vector<std::string> preset_names();

/// Throws ConfigError for unknown names.
ExperimentConfig make_preset(const std::string& name);

}  // namespace admitsim::pipeline
