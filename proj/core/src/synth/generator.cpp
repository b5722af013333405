#include "admitsim/synth/generator.hpp"

#include "admitsim/market/matching.hpp"
#include "admitsim/rng.hpp"

namespace admitsim::synth {
namespace {

struct Cohort {
  std::vector<StudentRecord> students;
  UtilityMatrix utilities;
  SubjectiveBeliefs beliefs;
  Reports reports;
};

Cohort draw_cohort(const SynthConfig& config, const Population& base, std::vector<StudentRecord> students,
                   std::span<const market::CutoffValue> prior, bool truthful, std::uint64_t seed) {
  Cohort c;
  c.students = std::move(students);
  c.utilities = realize_utilities(c.students, base.programs, config.utility.gamma, base.theta,
                                  derive_seed(seed, "utilities"));
  c.beliefs = generate_beliefs(c.students, prior, config.behavior.beliefs, derive_seed(seed, "beliefs"));
  BehaviorConfig behavior = config.behavior;
  if (truthful) {
    behavior.rule = OmissionRule::belief_threshold;
    behavior.threshold = 0.0;
  }
  c.reports = generate_reports(c.students, base.programs, c.utilities, c.beliefs.main, behavior,
                               derive_seed(seed, "reports"));
  return c;
}

std::vector<market::CutoffValue> realized_cutoffs(const Cohort& c, const std::vector<market::ProgramRecord>& programs) {
  const market::IndexedMarket indexed(make_market(c.students, programs, c.reports.rols));
  return market::deferred_acceptance(indexed).cutoffs;
}

}  // namespace

market::Market make_market(const std::vector<StudentRecord>& students,
                           const std::vector<market::ProgramRecord>& programs,
                           const std::vector<market::RankOrderedList>& rols) {
  market::Market m;
  m.applicants.reserve(students.size());
  for (const auto& s : students) m.applicants.push_back({s.id, s.eligibility_score});
  m.programs = programs;
  m.rols = rols;
  return m;
}

market::Market GeneratedMarket::market() const {
  return make_market(population.students, population.programs, reports.rols);
}

GeneratedMarket generate_market(const SynthConfig& config, std::uint64_t seed) {
  validate(config);
  GeneratedMarket out;
  out.population = generate_population(config, seed);
  const std::size_t n = config.population.n_students;

  std::vector<market::CutoffValue> prior(out.population.programs.size(), market::CutoffValue::open());
  for (std::size_t year = 0; year < config.behavior.history_years; ++year) {
    const std::uint64_t year_seed = derive_seed(seed, "history", year);
    auto students = generate_students(config, n, derive_seed(year_seed, "students"));
    const Cohort cohort = draw_cohort(config, out.population, std::move(students), prior, year == 0, year_seed);
    prior = realized_cutoffs(cohort, out.population.programs);
    out.history.push_back(prior);
  }
  out.prior_cutoffs = prior;

  Cohort current = draw_cohort(config, out.population, out.population.students, prior, false,
                               derive_seed(seed, "cohort"));
  out.utilities = std::move(current.utilities);
  out.beliefs = std::move(current.beliefs);
  out.reports = std::move(current.reports);
  return out;
}

}  // namespace admitsim::synth
