#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "admitsim/market/matching.hpp"
#include "admitsim/market/types.hpp"

namespace admitsim::cutoffs {

/// Simulated cutoffs: samples[j][r] is program j's cutoff in replication r.
struct CutoffSampleTable {
  std::vector<ProgramId> programs;
  std::vector<std::vector<market::CutoffValue>> samples;
  /// Seed each replication drew its resample from.
  std::vector<std::uint64_t> replication_seeds;

  std::size_t replications() const { return replication_seeds.size(); }

  friend bool operator==(const CutoffSampleTable&, const CutoffSampleTable&) = default;
};

/// Bootstraps market-clearing cutoffs. Each replication draws N applicants
/// with replacement (each with her list and score), runs the mechanism and
/// records every program's cutoff. Replication r uses a seed derived from
/// (seed, r), so results do not depend on `threads`. Throws InputError for
/// R = 0 or an empty population, and whatever market validation throws.
CutoffSampleTable simulate_cutoffs(const market::Market& market, std::size_t replications, std::uint64_t seed,
                                   std::size_t threads = 1);

/// Share of samples that admit `score` (Open, or cutoff <= score). Throws
/// InputError on an empty sample.
double rational_admission_prob(double score, std::span<const market::CutoffValue> samples);

/// rational_admission_prob for every applicant (rows, market order) and
/// program (columns, table order), using sorted samples.
Eigen::MatrixXd rational_probabilities(const market::Market& market, const CutoffSampleTable& table);

}  // namespace admitsim::cutoffs
