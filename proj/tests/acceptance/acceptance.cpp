// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "admitsim/belief/analysis.hpp"
#include "admitsim/cutoffs/simulation.hpp"
#include "admitsim/econ/clogit.hpp"
#include "admitsim/econ/design.hpp"
#include "admitsim/econ/linear.hpp"
#include "admitsim/pipeline/manifest.hpp"
#include "admitsim/pipeline/presets.hpp"
#include "admitsim/pipeline/stages.hpp"
#include "admitsim/pipeline/verify.hpp"
#include "admitsim/rng.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace admitsim;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass{false};
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

constexpr std::uint64_t kSeed = 1;
constexpr int kPatternSeeds = 10;

pipeline::ExperimentConfig preset(const std::string& name, std::uint64_t seed) {
  auto c = pipeline::make_preset(name);
  c.seed = seed;
  return c;
}

const econ::ModelFit& fit_named(const std::vector<econ::ModelFit>& fits, const std::string& id) {
  for (const auto& f : fits) {
    if (f.model_id == id) return f;
  }
  throw std::runtime_error("no model " + id);
}

Verdict strategy_proofness() {
  const auto start = std::chrono::steady_clock::now();
  pipeline::VerifyOptions o;
  o.instances = 200;
  o.max_students = 5;
  o.max_programs = 4;
  o.markets = 0;
  const auto r = pipeline::run_verification(o);
  const double t = seconds_since(start);
  return {r.instances == 200 && r.profitable_deviations == 0 && t < 60.0,
          fmt::format("{} instances, {} deviations checked, {} profitable, {:.1f} s", r.instances,
                      r.deviations_checked, r.profitable_deviations, t)};
}

Verdict stability() {
  const auto start = std::chrono::steady_clock::now();
  pipeline::VerifyOptions o;
  o.instances = 0;
  o.markets = 1000;
  o.max_market_students = 10000;
  const auto r = pipeline::run_verification(o);
  const double t = seconds_since(start);
  return {r.markets == 1000 && r.blocking_pairs == 0 && r.feasibility_violations == 0 &&
              r.cutoff_rule_mismatches == 0 && t < 120.0,
          fmt::format("{} markets, {} blocking pairs, {} feasibility violations, {} cutoff-rule mismatches, {:.1f} s",
                      r.markets, r.blocking_pairs, r.feasibility_violations, r.cutoff_rule_mismatches, t)};
}

Verdict rational_example() {
  std::vector<market::CutoffValue> samples;
  for (int r = 0; r < 70; ++r) samples.push_back(market::CutoffValue::at(4.0 + 0.07 * r));
  for (int r = 0; r < 30; ++r) samples.push_back(market::CutoffValue::at(9.01 + 0.1 * r));
  Rng rng = make_rng(kSeed);
  std::shuffle(samples.begin(), samples.end(), rng);
  const double p = cutoffs::rational_admission_prob(9.0, samples);
  return {p == 0.70, fmt::format("p = {}", p)};
}

Verdict belief_identities() {
  double worst = 0.0;
  bool antisymmetric = true, in_range = true;
  for (int a = 0; a < 100; ++a) {
    for (int b = 0; b < 100; ++b) {
      const double p = a / 99.0, q = b / 99.0;
      worst = std::max(worst, std::abs(belief::combined_belief(p, q) - (1.0 - (1.0 - p) * (1.0 - q))));
      const double e = belief::belief_error(p, q);
      antisymmetric = antisymmetric && e == -belief::belief_error(q, p);
      in_range = in_range && e >= -1.0 && e <= 1.0;
    }
  }
  return {worst <= 1e-12 && antisymmetric && in_range,
          fmt::format("max |combined - identity| = {:.2e}, antisymmetric = {}, in range = {}", worst, antisymmetric,
                      in_range)};
}

Verdict clogit_gradient() {
  Rng rng = make_rng(kSeed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  int points = 0;
  for (std::uint64_t d = 0; d < 10; ++d) {
    const auto data = fixture::random_choices(derive_seed(kSeed, "gradient-data", d), 80, 3 + d % 5);
    const econ::ClogitProblem problem(data);
    for (int k = 0; k < 5; ++k, ++points) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(problem.dimension()));
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
      const auto analytic = problem.evaluate(x, false).gradient;
      const auto numeric = fixture::numeric_gradient(problem, x);
      worst = std::max(worst, (analytic - numeric).norm() / std::max(1.0, analytic.norm()));
    }
  }
  return {points == 50 && worst < 1e-6, fmt::format("{} points, max relative error {:.2e}", points, worst)};
}

Verdict recovery() {
  const auto c = preset("recovery", kSeed);
  const auto r = pipeline::run_experiment(c, kSeed);
  const auto rows = pipeline::demand_comparison(r.data, r.fits);
  int gamma_ok = 0, theta_ok = 0, theta_n = 0;
  for (const auto& row : rows) {
    const auto& [est, se] = row.by_mode.at("revealed");
    const bool ok = std::abs(est - row.truth) <= 3.0 * se;
    if (row.term.rfind("theta[", 0) == 0) {
      ++theta_n;
      theta_ok += ok;
    } else {
      gamma_ok += ok;
    }
  }
  const auto& rev = fit_named(r.fits, "clogit-revealed");
  double spread = 0.0;
  for (const auto* other : {"clogit-stated", "clogit-stability"}) {
    const auto& f = fit_named(r.fits, other);
    if (f.coef.size() != rev.coef.size()) {
      spread = INFINITY;
      break;
    }
    spread = std::max(spread, (f.coef - rev.coef).cwiseAbs().maxCoeff());
  }
  const double tol = econ::ClogitOptions{}.tolerance;
  const double share = theta_n == 0 ? 0.0 : static_cast<double>(theta_ok) / theta_n;
  return {gamma_ok == 3 && share >= 0.95 && spread <= 2 * tol,
          fmt::format("gamma within 3 SE: {}/3, theta within 3 SE: {}/{} ({:.0f}%), max mode gap {:.2e}", gamma_ok,
                      theta_ok, theta_n, 100 * share, spread)};
}

struct PatternRun {
  double truth{0}, stated{0}, stability{0};
  double belief_coef{0}, belief_z{0}, max_other_z{0};
  double pessimism_coef{0};
  bool kink_at_zero{false};
};

std::vector<PatternRun>& pattern_runs() {
  static std::vector<PatternRun> runs = [] {
    std::vector<PatternRun> out;
    for (int s = 1; s <= kPatternSeeds; ++s) {
      const auto seed = static_cast<std::uint64_t>(s);
      const auto r = pipeline::run_experiment(preset("paper-like", seed), seed);
      PatternRun p;
      p.truth = r.data.gamma[0];
      p.stated = fit_named(r.fits, "clogit-stated").estimate("peer_quality");
      p.stability = fit_named(r.fits, "clogit-stability").estimate("peer_quality");
      const auto& eq2 = fit_named(r.fits, "eq2");
      p.belief_coef = eq2.estimate("belief");
      p.belief_z = eq2.z("belief");
      for (const auto* block : {&econ::ses_block(), &econ::personality_block()}) {
        for (const auto& t : *block) p.max_other_z = std::max(p.max_other_z, std::abs(eq2.z(t)));
      }
      p.pessimism_coef = fit_named(r.fits, "eq3").estimate("pessimistic");
      p.kink_at_zero = r.kink_diagnostic.max_at_zero();
      out.push_back(p);
    }
    return out;
  }();
  return runs;
}

Verdict bias() {
  int ok = 0;
  std::string detail;
  for (const auto& p : pattern_runs()) {
    const bool pass = p.stated > 1.25 * p.truth && std::abs(p.stability - p.truth) < std::abs(p.stated - p.truth);
    ok += pass;
    detail += fmt::format(" {:.2f}/{:.2f}{}", p.stated, p.stability, pass ? "" : "*");
  }
  return {ok == kPatternSeeds,
          fmt::format("{}/{} seeds; truth {:.2f}, stated/stability per seed:{}", ok, kPatternSeeds,
                      pattern_runs().front().truth, detail)};
}

Verdict hypotheses() {
  int h2 = 0, h3 = 0;
  std::string detail;
  for (const auto& p : pattern_runs()) {
    const bool a = p.belief_coef < 0 && std::abs(p.belief_z) > p.max_other_z;
    const bool b = p.pessimism_coef > 0;
    h2 += a;
    h3 += b;
    detail += fmt::format(" z={:.1f}/{:.1f},pess={:+.4f}", p.belief_z, p.max_other_z, p.pessimism_coef);
  }
  return {h2 == kPatternSeeds && h3 == kPatternSeeds,
          fmt::format("belief dominates {}/{}, pessimism positive {}/{};{}", h2, kPatternSeeds, h3, kPatternSeeds,
                      detail)};
}

Verdict kink() {
  const auto behavioral = pipeline::run_experiment(preset("paper-like", kSeed), kSeed);
  const auto truthful = pipeline::run_experiment(preset("truthful", kSeed), kSeed);
  const auto& b = behavioral.kink_diagnostic;
  const auto& t = truthful.kink_diagnostic;
  int seeds_at_zero = 0;
  for (const auto& p : pattern_runs()) seeds_at_zero += p.kink_at_zero;
  return {b.max_at_zero() && t.placebo_p > 0.1,
          fmt::format("paper-like max bin {} (zero bin {}), truthful placebo p = {:.3f}; max at zero in {}/{} seeds",
                      b.max_bin ? std::to_string(*b.max_bin) : "none", b.zero_bin, t.placebo_p, seeds_at_zero,
                      kPatternSeeds)};
}

Verdict calibration() {
  auto c = preset("paper-like", kSeed);
  c.output_dir = fs::temp_directory_path() / "admitsim_acceptance_calibration";
  fs::remove_all(c.output_dir);
  pipeline::cmd_run_all(c);
  std::ifstream in(c.output_dir / pipeline::kManifestFile);
  const auto m = nlohmann::json::parse(in);
  fs::remove_all(c.output_dir);
  if (!m.contains("calibration")) return {false, "manifest has no calibration block"};
  const auto& cal = m["calibration"];
  const double nt = cal["non_truthful"], om = cal["omits_top"], pr = cal["payoff_relevant"];
  const bool ok = std::abs(nt - 0.20) <= 0.05 && std::abs(om - 0.12) <= 0.05 && std::abs(pr - 0.02) <= 0.05;
  return {ok, fmt::format("manifest rates {:.3f} / {:.3f} / {:.3f} vs 0.20 / 0.12 / 0.02", nt, om, pr)};
}

Verdict linear_oracles() {
  Rng rng = make_rng(kSeed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> weight(0.1, 4.0);
  double worst = 0.0;
  bool bitwise = true;
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index n = 40 + 13 * rep, k = 1 + rep % 6;
    econ::DesignMatrix d;
    d.x.resize(n, k);
    d.y.resize(n);
    d.weights = Eigen::VectorXd(n);
    for (Eigen::Index c = 0; c < k; ++c) d.columns.push_back(fmt::format("x{}", c));
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
    std::vector<double> y, w;
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < k; ++c) {
        d.x(r, c) = c == 0 ? 1.0 : normal(rng) * c;
        rows[static_cast<std::size_t>(r)].push_back(d.x(r, c));
      }
      d.y(r) = 1.0 + 0.5 * d.x(r, k - 1) + normal(rng);
      (*d.weights)(r) = weight(rng);
      y.push_back(d.y(r));
      w.push_back((*d.weights)(r));
    }
    const auto ols = econ::ols_fit(d);
    const auto wls = econ::wls_fit(d);
    const auto ols_ref = oracle::normal_equations(rows, y);
    const auto wls_ref = oracle::normal_equations(rows, y, w);
    for (std::size_t c = 0; c < ols_ref.size(); ++c) {
      const auto i = static_cast<Eigen::Index>(c);
      worst = std::max(worst, std::abs(ols.coef(i) - ols_ref[c]) / std::max(1.0, std::abs(ols_ref[c])));
      worst = std::max(worst, std::abs(wls.coef(i) - wls_ref[c]) / std::max(1.0, std::abs(wls_ref[c])));
    }
    auto unit = d;
    unit.weights = Eigen::VectorXd::Ones(n);
    bitwise = bitwise && econ::wls_fit(unit).coef == ols.coef;
  }

  econ::DesignMatrix hand;
  hand.columns = {"intercept", "x"};
  hand.x.resize(5, 2);
  hand.x << 1, 1, 1, 2, 1, 3, 1, 4, 1, 5;
  hand.y.resize(5);
  hand.y << 2, 3, 5, 4, 7;
  const auto h = econ::ols_fit(hand);
  const double se_gap = std::max(std::abs(h.se(0) - std::sqrt(0.171)), std::abs(h.se(1) - std::sqrt(157.0 / 3000.0)));
  return {worst <= 1e-10 && se_gap <= 1e-12 && bitwise,
          fmt::format("max relative coefficient gap {:.2e}, HC1 hand gap {:.2e}, unit-weight WLS bitwise = {}", worst,
                      se_gap, bitwise)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"strategy-proofness", strategy_proofness},
      {"stability and cutoff self-consistency", stability},
      {"rational-probability example", rational_example},
      {"belief formula identities", belief_identities},
      {"conditional-logit gradient", clogit_gradient},
      {"parameter recovery", recovery},
      {"stated-choice bias", bias},
      {"hypothesis directions", hypotheses},
      {"kink diagnostic", kink},
      {"outcome-rate calibration", calibration},
      {"linear-model oracles", linear_oracles},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, fmt::format("threw: {}", e.what())};
    }
    failed += !v.pass;
    fmt::print("{} {:>2} {}: {} [{:.1f} s]\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, v.detail,
               seconds_since(start));
    std::fflush(stdout);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
