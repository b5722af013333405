#pragma once

#include <cstddef>

#include "admitsim/market/strategy_proofness.hpp"
#include "admitsim/rng.hpp"

namespace admitsim::market {

/// Small random instance for exhaustive checks: 1..max_students applicants
/// with continuous scores, 1..max_programs programs of capacity 1..3, uniform
/// random true orders, and submitted lists that are a random mix of truthful
/// prefixes and arbitrary lists.
PreferenceInstance random_small_instance(Rng& rng, std::size_t max_students, std::size_t max_programs);

/// Random market of the given size with uniform random lists of length 1..8
/// and capacities summing to roughly `seat_ratio` times the applicant count.
Market random_market(Rng& rng, std::size_t n_students, std::size_t n_programs, double seat_ratio);

/// Runs DA with every capacity raised by one while reporting against the real
/// capacities. Used to confirm the verification suites catch a broken
/// mechanism.
MatchOutcome capacity_plus_one_mechanism(const Market& market);

}  // namespace admitsim::market
