#pragma once

#include <cstdint>
#include <vector>

#include "admitsim/market/types.hpp"
#include "admitsim/synth/config.hpp"
#include "admitsim/synth/population.hpp"
#include "admitsim/synth/reports.hpp"
#include "admitsim/synth/subjective_beliefs.hpp"
#include "admitsim/synth/utilities.hpp"

namespace admitsim::synth {

/// A complete synthetic admission year with its ground truth.
struct GeneratedMarket {
  Population population;
  UtilityMatrix utilities;
  SubjectiveBeliefs beliefs;
  Reports reports;
  /// Cutoffs published the year before, aligned with population.programs.
  std::vector<market::CutoffValue> prior_cutoffs;
  /// Cutoffs of each warm-up year, oldest first.
  std::vector<std::vector<market::CutoffValue>> history;

  market::Market market() const;
};

/// Generates the programs, then `history_years` warm-up cohorts that produce
/// the published prior-year cutoffs, then the analysed cohort. The first
/// warm-up cohort reports truthfully; later cohorts and the analysed one form
/// beliefs from the previous year's cutoffs and report through the omission
/// rule.
GeneratedMarket generate_market(const SynthConfig& config, std::uint64_t seed);

market::Market make_market(const std::vector<StudentRecord>& students,
                           const std::vector<market::ProgramRecord>& programs,
                           const std::vector<market::RankOrderedList>& rols);

}  // namespace admitsim::synth
