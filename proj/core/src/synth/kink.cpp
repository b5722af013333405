#include "admitsim/synth/kink.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

namespace admitsim::synth {
namespace {

struct Slope {
  double value;
  double variance;
};

// Count-weighted least-squares slope of rate on bin centre over [first, last],
// with its sampling variance under binomial bin rates.
std::optional<Slope> local_slope(const KinkCurve& curve, std::size_t first, std::size_t last) {
  double sw = 0;
  double sx = 0;
  double sy = 0;
  std::size_t populated = 0;
  for (std::size_t k = first; k <= last; ++k) {
    const auto& b = curve.bins[k];
    if (!b.rate) continue;
    const double w = static_cast<double>(b.pairs);
    sw += w;
    sx += w * b.center();
    sy += w * *b.rate;
    ++populated;
  }
  if (populated < 2) return std::nullopt;
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0;
  double sxy = 0;
  double var_num = 0;
  for (std::size_t k = first; k <= last; ++k) {
    const auto& b = curve.bins[k];
    if (!b.rate) continue;
    const double w = static_cast<double>(b.pairs);
    const double dx = b.center() - mx;
    sxx += w * dx * dx;
    sxy += w * dx * (*b.rate - my);
    const double r = b.raw_rate.value_or(*b.rate);
    var_num += w * dx * dx * r * (1.0 - r);
  }
  return Slope{sxy / sxx, var_num / (sxx * sxx)};
}

}  // namespace

std::optional<std::size_t> KinkCurve::bin_of(double x) const {
  if (bins.empty() || x < bins.front().lo || x > bins.back().hi) return std::nullopt;
  const double width = bins.front().hi - bins.front().lo;
  const auto k = static_cast<std::size_t>(std::floor((x - bins.front().lo) / width));
  return std::min(k, bins.size() - 1);
}

KinkCurve application_kink_curve(const market::Market& market, std::span<const market::CutoffValue> prior_cutoffs,
                                 const KinkOptions& options) {
  if (options.n_bins < 5) throw InputError(fmt::format("kink curve needs at least 5 bins, got {}", options.n_bins));
  if (prior_cutoffs.size() != market.programs.size()) {
    throw InputError("prior cutoffs must align with the program list");
  }
  if (!(options.half_width > 0)) throw InputError("kink curve half width must be positive");

  KinkCurve curve;
  const double width = 2.0 * options.half_width / static_cast<double>(options.n_bins);
  for (std::size_t k = 0; k < options.n_bins; ++k) {
    KinkBin b;
    b.lo = -options.half_width + width * static_cast<double>(k);
    b.hi = b.lo + width;
    curve.bins.push_back(b);
  }

  std::unordered_map<ProgramId, std::size_t> position;
  std::vector<std::size_t> selective;
  for (std::size_t j = 0; j < market.programs.size(); ++j) {
    if (!prior_cutoffs[j].is_open() && prior_cutoffs[j].value() > options.min_prior_cutoff) {
      position.emplace(market.programs[j].id, j);
      selective.push_back(j);
    }
  }
  std::unordered_map<StudentId, const market::RankOrderedList*> lists;
  for (const auto& rol : market.rols) lists.emplace(rol.student, &rol);

  // (bin, program, applied) for every in-window pair.
  struct Pair {
    std::size_t bin;
    std::size_t program;
    bool applied;
  };
  std::vector<Pair> pairs;
  std::vector<bool> applied(market.programs.size());
  for (const auto& a : market.applicants) {
    std::fill(applied.begin(), applied.end(), false);
    if (auto it = lists.find(a.id); it != lists.end()) {
      for (ProgramId p : it->second->entries) {
        if (auto s = position.find(p); s != position.end()) applied[s->second] = true;
      }
    }
    for (std::size_t j : selective) {
      const auto k = curve.bin_of(a.score - prior_cutoffs[j].value());
      if (k) pairs.push_back({*k, j, applied[j]});
    }
  }

  std::vector<double> program_pairs(market.programs.size(), 0.0);
  std::vector<double> program_apps(market.programs.size(), 0.0);
  for (const auto& p : pairs) {
    ++curve.bins[p.bin].pairs;
    program_pairs[p.program] += 1;
    if (p.applied) {
      ++curve.bins[p.bin].applications;
      program_apps[p.program] += 1;
    }
  }
  const double overall = pairs.empty() ? 0.0 : std::accumulate(program_apps.begin(), program_apps.end(), 0.0) /
                                                   static_cast<double>(pairs.size());
  std::vector<double> centred(curve.bins.size(), 0.0);
  for (const auto& p : pairs) {
    centred[p.bin] += (p.applied ? 1.0 : 0.0) - program_apps[p.program] / program_pairs[p.program];
  }
  for (std::size_t k = 0; k < curve.bins.size(); ++k) {
    auto& b = curve.bins[k];
    if (b.pairs == 0) continue;
    const double n = static_cast<double>(b.pairs);
    b.raw_rate = static_cast<double>(b.applications) / n;
    b.rate = options.within_program ? overall + centred[k] / n : *b.raw_rate;
  }
  return curve;
}

KinkDiagnostic diagnose_kink(const KinkCurve& curve, std::size_t bandwidth) {
  if (bandwidth < 1) throw InputError("kink bandwidth must be at least one bin");
  KinkDiagnostic d;
  const std::size_t n = curve.bins.size();
  d.slope_change.assign(n, std::nullopt);
  d.zero_bin = curve.bin_of(0.0).value_or(n / 2);

  d.slope_change_z.assign(n, std::nullopt);
  double best = -1;
  for (std::size_t k = bandwidth; k + bandwidth < n; ++k) {
    const auto left = local_slope(curve, k - bandwidth, k);
    const auto right = local_slope(curve, k, k + bandwidth);
    if (!left || !right) continue;
    const double change = right->value - left->value;
    const double se = std::sqrt(left->variance + right->variance);
    d.slope_change[k] = change;
    d.slope_change_z[k] = se > 0 ? change / se : 0.0;
    if (std::abs(*d.slope_change_z[k]) > best) {
      best = std::abs(*d.slope_change_z[k]);
      d.max_bin = k;
    }
  }

  if (const auto& at_zero = d.slope_change_z[d.zero_bin]) {
    std::size_t evaluable = 0;
    std::size_t as_large = 0;
    for (const auto& c : d.slope_change_z) {
      if (!c) continue;
      ++evaluable;
      if (std::abs(*c) >= std::abs(*at_zero)) ++as_large;
    }
    d.placebo_p = static_cast<double>(as_large) / static_cast<double>(evaluable);
  }
  return d;
}

}  // namespace admitsim::synth
