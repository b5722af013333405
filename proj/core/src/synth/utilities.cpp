#include "admitsim/synth/utilities.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "admitsim/rng.hpp"

namespace admitsim::synth {

FeatureVector features(const StudentRecord& s, const market::ProgramRecord& p) {
  const double gender_share = s.female ? p.same_gender_share_female : 1.0 - p.same_gender_share_female;
  return {s.eligibility_score * p.peer_quality / kPeerQualityScale, gender_share, s.parents_income_pct * p.peer_parents_income};
}

double distance_offset(const StudentRecord& s, const market::ProgramRecord& p) {
  return distance_km(s.location, p.location) / 1000.0;
}

UtilityMatrix realize_utilities(std::span<const StudentRecord> students,
                                std::span<const market::ProgramRecord> programs,
                                const std::array<double, kFeatureCount>& gamma, std::span<const double> theta,
                                std::uint64_t seed, bool with_shocks) {
  if (theta.size() != programs.size()) {
    throw InputError(fmt::format("theta has {} entries for {} programs", theta.size(), programs.size()));
  }
  const auto n = static_cast<Eigen::Index>(students.size());
  const auto m = static_cast<Eigen::Index>(programs.size());
  UtilityMatrix u{Eigen::MatrixXd(n, m), Eigen::MatrixXd::Zero(n, m)};
  Rng rng = make_rng(seed);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = students[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& p = programs[static_cast<std::size_t>(j)];
      const FeatureVector x = features(s, p);
      double v = theta[static_cast<std::size_t>(j)] - distance_offset(s, p);
      for (std::size_t k = 0; k < kFeatureCount; ++k) v += gamma[k] * x[k];
      u.deterministic(i, j) = v;
      if (with_shocks) u.shock(i, j) = draw_gumbel(rng);
    }
  }
  return u;
}

std::vector<std::uint32_t> preference_order(const UtilityMatrix& u, std::size_t student) {
  std::vector<std::uint32_t> order(u.num_programs());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return u.total(student, a) > u.total(student, b);
  });
  return order;
}

}  // namespace admitsim::synth
