#include "admitsim/market/random_instances.hpp"

#include <algorithm>
#include <numeric>

namespace admitsim::market {
namespace {

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform_score(Rng& rng) { return kMinScore + (kMaxScore - kMinScore) * draw_open_unit(rng); }

}  // namespace

PreferenceInstance random_small_instance(Rng& rng, std::size_t max_students, std::size_t max_programs) {
  const std::size_t n = uniform_index(rng, 1, std::max<std::size_t>(1, max_students));
  const std::size_t m = uniform_index(rng, 1, std::max<std::size_t>(1, max_programs));

  PreferenceInstance inst;
  std::vector<ProgramId> ids;
  for (std::size_t j = 0; j < m; ++j) {
    ProgramRecord p;
    p.id = ProgramId{static_cast<std::int64_t>(j + 1)};
    p.capacity = static_cast<int>(uniform_index(rng, 1, 3));
    inst.market.programs.push_back(p);
    ids.push_back(p.id);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const StudentId sid{static_cast<std::int64_t>(i + 1)};
    inst.market.applicants.push_back({sid, uniform_score(rng)});
    auto order = ids;
    std::shuffle(order.begin(), order.end(), rng);
    inst.true_preferences.push_back(order);

    RankOrderedList rol{sid, {}};
    if (std::bernoulli_distribution(0.5)(rng)) {
      rol.entries.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(uniform_index(rng, 1, m)));
    } else {
      auto other = ids;
      std::shuffle(other.begin(), other.end(), rng);
      other.resize(uniform_index(rng, 1, m));
      rol.entries = std::move(other);
    }
    inst.market.rols.push_back(std::move(rol));
  }
  return inst;
}

Market random_market(Rng& rng, std::size_t n_students, std::size_t n_programs, double seat_ratio) {
  Market market;
  const double mean_cap = std::max(1.0, seat_ratio * static_cast<double>(n_students) /
                                            static_cast<double>(std::max<std::size_t>(1, n_programs)));
  std::vector<ProgramId> ids;
  for (std::size_t j = 0; j < n_programs; ++j) {
    ProgramRecord p;
    p.id = ProgramId{static_cast<std::int64_t>(j + 1)};
    const double draw = mean_cap * (0.25 + 1.5 * draw_open_unit(rng));
    p.capacity = std::max(1, static_cast<int>(draw));
    market.programs.push_back(p);
    ids.push_back(p.id);
  }
  const std::size_t max_len = std::min(kMaxListLength, n_programs);
  std::vector<ProgramId> pool = ids;
  for (std::size_t i = 0; i < n_students; ++i) {
    const StudentId sid{static_cast<std::int64_t>(i + 1)};
    market.applicants.push_back({sid, uniform_score(rng)});
    const std::size_t len = uniform_index(rng, 1, max_len);
    // Partial Fisher-Yates for the first `len` entries.
    for (std::size_t k = 0; k < len; ++k) std::swap(pool[k], pool[uniform_index(rng, k, pool.size() - 1)]);
    market.rols.push_back({sid, std::vector<ProgramId>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(len))});
  }
  return market;
}

MatchOutcome capacity_plus_one_mechanism(const Market& market) {
  Market inflated = market;
  for (auto& p : inflated.programs) p.capacity += 1;
  MatchOutcome out = run_matching(inflated);
  // Cutoffs are reported against the published capacities.
  const IndexedMarket real(market);
  std::vector<std::int32_t> assigned;
  assigned.reserve(real.num_students());
  for (std::size_t i = 0; i < real.num_students(); ++i) {
    const auto& a = out.assignment.at(real.student_id(i));
    assigned.push_back(a ? real.program_index(*a) : kUnassigned);
  }
  const auto cutoffs = cutoffs_from_assignment(real, assigned);
  for (std::size_t j = 0; j < real.num_programs(); ++j) out.cutoffs.at(real.program_id(j)) = cutoffs[j];
  return out;
}

}  // namespace admitsim::market
