#include "admitsim/cutoffs/simulation.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "admitsim/rng.hpp"

namespace admitsim::cutoffs {

CutoffSampleTable simulate_cutoffs(const market::Market& market, std::size_t replications, std::uint64_t seed,
                                   std::size_t threads) {
  if (replications == 0) throw InputError("cutoff simulation needs at least one replication");
  if (market.applicants.empty()) throw InputError("cutoff simulation needs a non-empty population");
  const market::IndexedMarket base(market);
  const std::size_t n = base.num_students();
  const std::size_t m = base.num_programs();

  CutoffSampleTable table;
  table.programs.assign(base.program_ids().begin(), base.program_ids().end());
  table.samples.assign(m, std::vector<market::CutoffValue>(replications, market::CutoffValue::open()));
  table.replication_seeds.resize(replications);
  for (std::size_t r = 0; r < replications; ++r) table.replication_seeds[r] = derive_seed(seed, "replication", r);

  const auto run = [&](std::size_t r) {
    Rng rng = make_rng(table.replication_seeds[r]);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    std::vector<std::uint32_t> picks(n);
    for (auto& p : picks) p = pick(rng);
    const auto outcome = market::deferred_acceptance(base.resample(picks));
    for (std::size_t j = 0; j < m; ++j) table.samples[j][r] = outcome.cutoffs[j];
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, replications);
  if (workers == 1) {
    for (std::size_t r = 0; r < replications; ++r) run(r);
    return table;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t r = w; r < replications; r += workers) run(r);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return table;
}

double rational_admission_prob(double score, std::span<const market::CutoffValue> samples) {
  if (samples.empty()) throw InputError("no cutoff samples");
  std::size_t admitted = 0;
  for (const auto& c : samples) admitted += c.admits(score) ? 1 : 0;
  return static_cast<double>(admitted) / static_cast<double>(samples.size());
}

Eigen::MatrixXd rational_probabilities(const market::Market& market, const CutoffSampleTable& table) {
  const std::size_t m = table.programs.size();
  const std::size_t r = table.replications();
  if (r == 0) throw InputError("no cutoff samples");
  // Per program: count of Open samples and sorted closed cutoffs.
  std::vector<std::size_t> open(m, 0);
  std::vector<std::vector<double>> closed(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (const auto& c : table.samples[j]) {
      if (c.is_open()) {
        ++open[j];
      } else {
        closed[j].push_back(c.value());
      }
    }
    std::sort(closed[j].begin(), closed[j].end());
  }
  Eigen::MatrixXd p(static_cast<Eigen::Index>(market.applicants.size()), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < market.applicants.size(); ++i) {
    const double s = market.applicants[i].score;
    for (std::size_t j = 0; j < m; ++j) {
      const auto below = std::upper_bound(closed[j].begin(), closed[j].end(), s) - closed[j].begin();
      p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(open[j] + static_cast<std::size_t>(below)) / static_cast<double>(r);
    }
  }
  return p;
}

}  // namespace admitsim::cutoffs
