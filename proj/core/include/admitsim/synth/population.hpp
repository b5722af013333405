#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "admitsim/market/types.hpp"
#include "admitsim/synth/config.hpp"

namespace admitsim::synth {

struct StudentRecord {
  StudentId id;
  double eligibility_score{0.0};
  double middle_school_gpa{0.0};
  double age{0.0};
  bool female{false};
  double parents_income_pct{0.0};
  double parents_edu_years{0.0};
  int confidence{0};        // 0-10
  int risk_willingness{0};  // 0-10
  bool postpone_willing{false};
  bool rejection_is_failure{false};
  bool difficult_to_comprehend{false};
  std::optional<bool> understands_sp;  // 2021 wave only
  bool survey_wave_2021{false};
  Point location;

  friend bool operator==(const StudentRecord&, const StudentRecord&) = default;
};

struct Population {
  std::vector<StudentRecord> students;
  std::vector<market::ProgramRecord> programs;
  /// Generator-truth program fixed effects, aligned with `programs`.
  std::vector<double> theta;
};

/// Draws students and programs. Covariates come from the configured marginals
/// joined by a Gaussian copula. Throws ConfigError on invalid distributions
/// or an empty population.
Population generate_population(const SynthConfig& config, std::uint64_t seed);

/// Students only; ids start at `first_id`.
std::vector<StudentRecord> generate_students(const SynthConfig& config, std::size_t n, std::uint64_t seed,
                                             std::int64_t first_id = 1);

/// Programs and their true fixed effects.
std::pair<std::vector<market::ProgramRecord>, std::vector<double>> generate_programs(const SynthConfig& config,
                                                                                     std::size_t n_students,
                                                                                     std::uint64_t seed);

}  // namespace admitsim::synth
