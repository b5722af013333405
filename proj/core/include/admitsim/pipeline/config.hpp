#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "admitsim/synth/config.hpp"
#include "admitsim/synth/kink.hpp"

namespace admitsim::pipeline {

/// Everything one experiment run depends on.
struct ExperimentConfig {
  std::string preset{"paper-like"};
  /// Mandatory before any stage runs; there is no clock-based fallback.
  std::optional<std::uint64_t> seed;
  synth::SynthConfig synth;
  std::size_t replications{100};
  std::size_t threads{1};
  /// Calibration band for pessimism classes.
  double pessimism_band{0.0};
  /// "subjective" uses the score-channel belief, "combined" folds in the
  /// alternative channel.
  std::string belief_encoding{"subjective"};
  bool program_fixed_effects{false};
  std::vector<std::string> models{"eq1", "eq2", "eq3", "eq5", "wave2021-with-SP",
                                  "clogit-revealed", "clogit-stated", "clogit-stability"};
  synth::KinkOptions kink;
  std::size_t kink_bandwidth{3};
  std::filesystem::path output_dir{"out"};
};

/// Starts from a named preset and applies the file's keys on top. A
/// `[experiment] preset` key selects the starting preset. Throws ConfigError
/// located at file:line for syntax errors, unknown sections or keys, and
/// unparsable or invalid values.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Same, from INI text; `origin` names the source in error messages.
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<config>");

/// Canonical INI rendering of every setting. Loading it back yields the same
/// configuration, and its hash identifies the run.
std::string render_config(const ExperimentConfig& config);

/// Throws ConfigError for an invalid configuration, including a missing seed
/// when `require_seed` is set.
void validate(const ExperimentConfig& config, bool require_seed);

}  // namespace admitsim::pipeline
