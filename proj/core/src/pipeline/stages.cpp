#include "admitsim/pipeline/stages.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "admitsim/common.hpp"
#include "admitsim/econ/clogit.hpp"
#include "admitsim/econ/linear.hpp"
#include "admitsim/io/csv.hpp"
#include "admitsim/io/records.hpp"
#include "admitsim/market/matching.hpp"
#include "admitsim/market/stability.hpp"
#include "admitsim/pipeline/manifest.hpp"
#include "admitsim/rng.hpp"
#include "admitsim/synth/generator.hpp"

namespace admitsim::pipeline {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using Timings = std::vector<std::pair<std::string, double>>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Outcome-rate targets of the calibrated preset and their tolerance.
constexpr double kTargetNonTruthful = 0.20;
constexpr double kTargetOmitsTop = 0.12;
constexpr double kTargetPayoffRelevant = 0.02;
constexpr double kRateTolerance = 0.05;

std::string current_message() {
  try {
    throw;
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "unknown error";
  }
}

template <class F>
auto run_stage(const std::string& name, Timings& timings, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  try {
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      timings.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    } else {
      auto result = f();
      timings.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      return result;
    }
  } catch (const StageError&) {
    throw;
  } catch (...) {
    const int code = classify_current_exception();
    throw StageError(name, code, fmt::format("stage '{}' failed: {}", name, current_message()));
  }
}

std::uint64_t seed_of(const ExperimentConfig& config) {
  validate(config, true);
  return *config.seed;
}

fs::path prepare_dir(const ExperimentConfig& config) {
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec || !fs::is_directory(config.output_dir)) {
    throw InputError(fmt::format("cannot create output directory {}: {}", config.output_dir.string(), ec.message()));
  }
  const fs::path probe = config.output_dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw InputError(fmt::format("output directory {} is not writable", config.output_dir.string()));
  }
  fs::remove(probe);
  return config.output_dir;
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(fmt::format("cannot write {}", path.string()));
  out << j.dump(2) << "\n";
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot read {}", path.string()));
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::map<ProgramId, market::CutoffValue> cutoff_map(const std::vector<ProgramId>& ids,
                                                    const std::vector<market::CutoffValue>& values) {
  std::map<ProgramId, market::CutoffValue> out;
  for (std::size_t j = 0; j < ids.size(); ++j) out.emplace(ids[j], values[j]);
  return out;
}

json fit_to_json(const econ::ModelFit& f) {
  json j;
  j["model_id"] = f.model_id;
  j["estimator"] = f.estimator;
  j["n"] = f.n;
  j["dropped"] = f.dropped;
  if (f.r_squared) j["r_squared"] = *f.r_squared;
  if (f.log_likelihood) j["log_likelihood"] = *f.log_likelihood;
  if (f.reference_program) j["reference_program"] = f.reference_program->value;
  j["converged"] = f.converged;
  j["iterations"] = f.iterations;
  j["gradient_max_norm"] = f.gradient_max_norm;
  if (f.cluster_se) j["clusters"] = f.clusters;
  auto& terms = j["terms"] = json::array();
  for (std::size_t k = 0; k < f.terms.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    json t;
    t["term"] = f.terms[k];
    t["estimate"] = f.coef(kk);
    t["se"] = f.se(kk);
    t["z"] = f.coef(kk) / f.se(kk);
    if (f.cluster_se) t["cluster_se"] = (*f.cluster_se)(kk);
    terms.push_back(t);
  }
  auto& cov = j["covariance"] = json::array();
  for (Eigen::Index r = 0; r < f.cov.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < f.cov.cols(); ++c) row.push_back(f.cov(r, c));
    cov.push_back(row);
  }
  return j;
}

json rates_to_json(const belief::OutcomeRates& r) {
  json j;
  j["students"] = r.students;
  j["non_truthful"] = r.non_truthful;
  j["omits_top"] = r.omits_top;
  j["payoff_relevant"] = r.payoff_relevant;
  j["payoff_relevant_among_omitters"] = r.payoff_relevant_among_omitters;
  j["payoff_relevant_among_non_truthful"] = r.payoff_relevant_among_non_truthful;
  j["targets"] = {{"non_truthful", kTargetNonTruthful},
                  {"omits_top", kTargetOmitsTop},
                  {"payoff_relevant", kTargetPayoffRelevant},
                  {"tolerance", kRateTolerance}};
  j["within_tolerance"] = std::abs(r.non_truthful - kTargetNonTruthful) <= kRateTolerance &&
                          std::abs(r.omits_top - kTargetOmitsTop) <= kRateTolerance &&
                          std::abs(r.payoff_relevant - kTargetPayoffRelevant) <= kRateTolerance;
  return j;
}

void write_kink(const fs::path& dir, const synth::KinkCurve& curve, const synth::KinkDiagnostic& diag) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < curve.bins.size(); ++k) {
    const auto& b = curve.bins[k];
    rows.push_back({std::to_string(k), io::format_double(b.lo), io::format_double(b.hi),
                    io::format_double(b.center()), std::to_string(b.pairs), std::to_string(b.applications),
                    b.raw_rate ? io::format_double(*b.raw_rate) : "", b.rate ? io::format_double(*b.rate) : "",
                    diag.slope_change[k] ? io::format_double(*diag.slope_change[k]) : "",
                    diag.slope_change_z[k] ? io::format_double(*diag.slope_change_z[k]) : ""});
  }
  io::write_csv(dir / "kink_curve.csv",
                {"bin", "lo", "hi", "center", "pairs", "applications", "raw_rate", "rate", "slope_change", "slope_change_z"}, rows);
  json j;
  j["zero_bin"] = diag.zero_bin;
  j["max_slope_change_bin"] = diag.max_bin ? json(*diag.max_bin) : json();
  j["max_at_zero"] = diag.max_at_zero();
  j["placebo_p"] = diag.placebo_p;
  write_json_file(dir / "kink_diagnostic.json", j);
}

// Reorders per-student tables read from disk into the student file's order.
template <class T, class Key>
std::vector<T> align(const std::vector<StudentId>& ids, std::vector<T> items, Key key, const char* what) {
  std::map<StudentId, T> by_id;
  for (auto& it : items) {
    const StudentId id = key(it);
    if (!by_id.emplace(id, std::move(it)).second) {
      throw InputError(fmt::format("{}: duplicate student {}", what, id.value));
    }
  }
  std::vector<T> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    auto found = by_id.find(id);
    if (found == by_id.end()) throw InputError(fmt::format("{}: no entry for student {}", what, id.value));
    out.push_back(std::move(found->second));
    by_id.erase(found);
  }
  if (!by_id.empty()) {
    throw InputError(fmt::format("{}: unknown student {}", what, by_id.begin()->first.value));
  }
  return out;
}

void write_generated(const fs::path& dir, const ExperimentData& d) {
  io::write_students(dir / "students.csv", d.students);
  io::write_programs(dir / "programs.csv", d.programs);
  io::write_rols(dir / "rols.csv", d.rols);
  io::write_truth_flags(dir / "truth_flags.csv", d.flags);
  io::write_probability_table(dir / "subjective_beliefs.csv", "p_hat", d.student_ids(), d.program_ids(),
                              d.subjective);
  io::write_alternative_beliefs(dir / "alt_beliefs.csv", d.student_ids(), d.alternative);
  io::write_cutoffs(dir / "prior_cutoffs.csv", cutoff_map(d.program_ids(), d.prior_cutoffs));
  json truth;
  for (std::size_t k = 0; k < synth::kFeatureCount; ++k) truth["gamma"][synth::kFeatureNames[k]] = d.gamma[k];
  truth["theta"] = json::object();
  for (std::size_t j = 0; j < d.programs.size(); ++j) {
    truth["theta"][std::to_string(d.programs[j].id.value)] = d.theta[j];
  }
  write_json_file(dir / "generator_truth.json", truth);
}

ExperimentData read_generated(const fs::path& dir) {
  ExperimentData d;
  d.students = io::read_students(dir / "students.csv");
  d.programs = io::read_programs(dir / "programs.csv");
  const auto ids = d.student_ids();
  const auto pids = d.program_ids();

  auto rols = io::read_rols(dir / "rols.csv");
  {
    std::map<StudentId, market::RankOrderedList> by_id;
    for (auto& r : rols) by_id.emplace(r.student, std::move(r));
    for (const auto& id : ids) {
      auto it = by_id.find(id);
      d.rols.push_back(it == by_id.end() ? market::RankOrderedList{id, {}} : std::move(it->second));
      if (it != by_id.end()) by_id.erase(it);
    }
    if (!by_id.empty()) throw InputError(fmt::format("rols.csv: unknown student {}", by_id.begin()->first.value));
  }
  d.flags = align(ids, io::read_truth_flags(dir / "truth_flags.csv"), [](const auto& f) { return f.student; },
                  "truth_flags.csv");
  d.subjective = io::read_probability_table(dir / "subjective_beliefs.csv", "p_hat", ids, pids);
  d.alternative = io::read_alternative_beliefs(dir / "alt_beliefs.csv", ids);
  const auto prior = io::read_cutoffs(dir / "prior_cutoffs.csv");
  for (const auto& p : pids) {
    const auto it = prior.find(p);
    if (it == prior.end()) throw InputError(fmt::format("prior_cutoffs.csv: no cutoff for program {}", p.value));
    d.prior_cutoffs.push_back(it->second);
  }
  const json truth = read_json_file(dir / "generator_truth.json");
  try {
    for (std::size_t k = 0; k < synth::kFeatureCount; ++k) {
      d.gamma[k] = truth.at("gamma").at(synth::kFeatureNames[k]).get<double>();
    }
    for (const auto& p : pids) d.theta.push_back(truth.at("theta").at(std::to_string(p.value)).get<double>());
  } catch (const json::exception& e) {
    throw InputError(fmt::format("generator_truth.json: {}", e.what()));
  }
  return d;
}

std::map<ProgramId, market::CutoffValue> read_realized(const fs::path& dir) {
  return io::read_cutoffs(dir / "cutoffs.csv");
}

BeliefAnalysis read_belief_analysis(const fs::path& dir, const ExperimentData& d) {
  BeliefAnalysis b;
  b.records = align(d.student_ids(), io::read_belief_records(dir / "belief_records.csv"),
                    [](const auto& r) { return r.student; }, "belief_records.csv");
  b.verdicts = io::read_omission_verdicts(dir / "omission_verdicts.csv");
  b.rates = belief::outcome_rates(d.flags, b.verdicts);
  return b;
}

void write_estimates(const fs::path& dir, const ExperimentData& d, const std::vector<econ::ModelFit>& fits) {
  json j;
  auto& models = j["models"] = json::array();
  for (const auto& f : fits) models.push_back(fit_to_json(f));
  write_json_file(dir / "fits.json", j);
  io::write_coefficients(dir / "coefficients.csv", fits);

  const auto comparison = demand_comparison(d, fits);
  if (comparison.empty()) return;
  std::vector<std::string> header{"term", "truth"};
  std::vector<std::string> modes;
  for (const auto& [mode, v] : comparison.front().by_mode) modes.push_back(mode);
  for (const auto& m : modes) {
    header.push_back(m);
    header.push_back(m + "_se");
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : comparison) {
    std::vector<std::string> r{row.term, io::format_double(row.truth)};
    for (const auto& m : modes) {
      const auto it = row.by_mode.find(m);
      r.push_back(it == row.by_mode.end() ? "" : io::format_double(it->second.first));
      r.push_back(it == row.by_mode.end() ? "" : io::format_double(it->second.second));
    }
    rows.push_back(std::move(r));
  }
  io::write_csv(dir / "demand_comparison.csv", header, rows);
}

}  // namespace

int classify_current_exception() {
  try {
    throw;
  } catch (const StageError& e) {
    return e.exit_code();
  } catch (const ConfigError&) {
    return exit_code::config_error;
  } catch (const InputError&) {
    return exit_code::config_error;
  } catch (const PropertyViolation&) {
    return exit_code::property_violation;
  } catch (const NumericalError&) {
    return exit_code::numerical_failure;
  } catch (...) {
    return exit_code::failure;
  }
}

market::Market ExperimentData::market() const {
  market::Market m;
  for (const auto& s : students) m.applicants.push_back({s.id, s.eligibility_score});
  m.programs = programs;
  m.rols = rols;
  return m;
}

std::vector<StudentId> ExperimentData::student_ids() const {
  std::vector<StudentId> ids;
  for (const auto& s : students) ids.push_back(s.id);
  return ids;
}

std::vector<ProgramId> ExperimentData::program_ids() const {
  std::vector<ProgramId> ids;
  for (const auto& p : programs) ids.push_back(p.id);
  return ids;
}

ExperimentData generate_data(const ExperimentConfig& config, std::uint64_t seed) {
  auto g = synth::generate_market(config.synth, derive_seed(seed, "generate"));
  ExperimentData d;
  d.students = std::move(g.population.students);
  d.programs = std::move(g.population.programs);
  d.rols = std::move(g.reports.rols);
  d.flags = std::move(g.reports.flags);
  d.subjective = std::move(g.beliefs.main);
  d.alternative = std::move(g.beliefs.alternative);
  d.prior_cutoffs = std::move(g.prior_cutoffs);
  d.gamma = config.synth.utility.gamma;
  d.theta = std::move(g.population.theta);
  return d;
}

market::MatchOutcome match_checked(const market::Market& m) {
  auto outcome = market::run_matching(m);
  if (const auto blocking = market::check_stability(outcome, m); !blocking.empty()) {
    throw PropertyViolation(fmt::format("matching has {} blocking pairs", blocking.size()));
  }
  if (const auto issues = market::check_feasibility(outcome, m); !issues.empty()) {
    throw PropertyViolation(fmt::format("matching has {} feasibility violations (first: {})", issues.size(),
                                        market::to_string(issues.front().issue)));
  }
  if (market::assign_by_cutoffs(m, outcome.cutoffs) != outcome.assignment) {
    throw PropertyViolation("assignment differs from the cutoff rule applied to its own cutoffs");
  }
  return outcome;
}

BeliefAnalysis analyse_beliefs(const ExperimentData& d, const std::map<ProgramId, market::CutoffValue>& realized,
                               const Eigen::MatrixXd& rational, double band) {
  BeliefAnalysis b;
  b.records = belief::top_program_beliefs(d.flags, d.program_ids(), d.subjective, d.alternative, rational, band);
  std::vector<double> scores;
  for (const auto& s : d.students) scores.push_back(s.eligibility_score);
  b.verdicts = belief::omission_verdicts(d.flags, scores, realized);
  b.rates = belief::outcome_rates(d.flags, b.verdicts);
  return b;
}

econ::AnalysisTable analysis_table(const ExperimentData& d, const BeliefAnalysis& beliefs,
                                   const std::string& belief_encoding) {
  econ::AnalysisTable t;
  t.students = d.student_ids();
  const std::size_t n = d.students.size();
  if (beliefs.records.size() != n) throw InputError("belief records must cover every student");

  std::map<StudentId, bool> relevant;
  for (const auto& v : beliefs.verdicts) relevant[v.student] = v.payoff_relevant;

  const auto column = [&](auto f) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(i);
    return v;
  };
  const auto ind = [](bool b) { return b ? 1.0 : 0.0; };
  const auto& s = d.students;
  const auto& r = beliefs.records;

  t.add("belief", column([&](std::size_t i) {
          return belief_encoding == "combined" && r[i].alternative
                     ? belief::combined_belief(r[i].subjective, *r[i].alternative)
                     : r[i].subjective;
        }));
  t.add("wave_2021", column([&](std::size_t i) { return ind(s[i].survey_wave_2021); }));
  t.add("female", column([&](std::size_t i) { return ind(s[i].female); }));
  t.add("age", column([&](std::size_t i) { return s[i].age; }));
  t.add("eligibility_score", column([&](std::size_t i) { return s[i].eligibility_score; }));
  t.add("middle_school_gpa", column([&](std::size_t i) { return s[i].middle_school_gpa; }));
  t.add("parents_income", column([&](std::size_t i) { return s[i].parents_income_pct; }));
  t.add("parents_edu", column([&](std::size_t i) { return s[i].parents_edu_years; }));
  t.add("confidence", column([&](std::size_t i) { return static_cast<double>(s[i].confidence); }));
  t.add("risk_willingness", column([&](std::size_t i) { return static_cast<double>(s[i].risk_willingness); }));
  t.add("postpone_willing", column([&](std::size_t i) { return ind(s[i].postpone_willing); }));
  t.add("rejection_is_failure", column([&](std::size_t i) { return ind(s[i].rejection_is_failure); }));
  t.add("difficult_to_comprehend", column([&](std::size_t i) { return ind(s[i].difficult_to_comprehend); }));
  t.add("understands_sp",
        column([&](std::size_t i) { return s[i].understands_sp ? ind(*s[i].understands_sp) : kNaN; }));
  t.add("pessimistic", column([&](std::size_t i) { return ind(r[i].pessimism == belief::PessimismClass::pessimistic); }));
  t.add("optimistic", column([&](std::size_t i) { return ind(r[i].pessimism == belief::PessimismClass::optimistic); }));
  t.add("non_truthful", column([&](std::size_t i) { return ind(d.flags[i].non_truthful); }));
  t.add("omits_top", column([&](std::size_t i) { return ind(d.flags[i].omits_top); }));
  t.add("payoff_relevant", column([&](std::size_t i) {
          const auto it = relevant.find(s[i].id);
          return ind(it != relevant.end() && it->second);
        }));
  t.add("top_program", column([&](std::size_t i) { return static_cast<double>(d.flags[i].true_top.value); }));
  return t;
}

std::vector<econ::ModelFit> estimate_models(const ExperimentConfig& config, const ExperimentData& d,
                                            const econ::AnalysisTable& table,
                                            const std::map<ProgramId, market::CutoffValue>& realized,
                                            std::optional<econ::ChoiceMode> only) {
  std::vector<econ::ModelFit> fits;
  for (const auto& name : config.models) {
    if (name.rfind("clogit-", 0) == 0) {
      const auto mode = econ::choice_mode_from_name(name.substr(7));
      if (only && *only != mode) continue;
      const auto data = econ::build_choice_dataset(mode, d.students, d.programs, d.flags, d.rols, realized);
      fits.push_back(econ::clogit_fit(data, {}, name));
      continue;
    }
    econ::DesignOptions options;
    if (config.program_fixed_effects) {
      options.fixed_effects = "top_program";
      options.tag = "-fe";
    }
    fits.push_back(econ::ols_fit(econ::build_design(table, econ::model_spec_from_name(name), options)));
  }
  return fits;
}

std::vector<ComparisonRow> demand_comparison(const ExperimentData& d, const std::vector<econ::ModelFit>& fits) {
  std::vector<const econ::ModelFit*> logits;
  for (const auto& f : fits) {
    if (f.estimator == "clogit") logits.push_back(&f);
  }
  if (logits.empty()) return {};
  std::map<ProgramId, double> theta;
  for (std::size_t j = 0; j < d.programs.size(); ++j) theta.emplace(d.programs[j].id, d.theta[j]);

  const auto* first = logits.front();
  const double theta_ref = first->reference_program ? theta.at(*first->reference_program) : 0.0;
  std::vector<ComparisonRow> rows;
  for (const auto& term : first->terms) {
    ComparisonRow row;
    row.term = term;
    bool known = false;
    for (std::size_t k = 0; k < synth::kFeatureCount; ++k) {
      if (term == synth::kFeatureNames[k]) {
        row.truth = d.gamma[k];
        known = true;
      }
    }
    if (!known && term.rfind("theta[", 0) == 0) {
      const ProgramId p{std::stoll(term.substr(6, term.size() - 7))};
      row.truth = theta.at(p) - theta_ref;
    }
    for (const auto* f : logits) {
      const std::string mode = f->model_id.rfind("clogit-", 0) == 0 ? f->model_id.substr(7) : f->model_id;
      for (std::size_t k = 0; k < f->terms.size(); ++k) {
        if (f->terms[k] == term && f->reference_program == first->reference_program) {
          row.by_mode[mode] = {f->coef(static_cast<Eigen::Index>(k)), f->se(static_cast<Eigen::Index>(k))};
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::uint64_t seed) {
  ExperimentResult r;
  r.data = generate_data(config, seed);
  const auto m = r.data.market();
  r.outcome = match_checked(m);
  r.samples = cutoffs::simulate_cutoffs(m, config.replications, derive_seed(seed, "cutoffs"), config.threads);
  r.rational = cutoffs::rational_probabilities(m, r.samples);
  r.beliefs = analyse_beliefs(r.data, r.outcome.cutoffs, r.rational, config.pessimism_band);
  r.table = analysis_table(r.data, r.beliefs, config.belief_encoding);
  r.fits = estimate_models(config, r.data, r.table, r.outcome.cutoffs);
  r.kink = synth::application_kink_curve(m, r.data.prior_cutoffs, config.kink);
  r.kink_diagnostic = synth::diagnose_kink(r.kink, config.kink_bandwidth);
  return r;
}

namespace {

void generate_into(const ExperimentConfig& config, const fs::path& dir, Timings& t) {
  const std::uint64_t seed = seed_of(config);
  const auto data = run_stage("generate", t, [&] { return generate_data(config, seed); });
  run_stage("generate.write", t, [&] {
    write_generated(dir, data);
    const auto curve = synth::application_kink_curve(data.market(), data.prior_cutoffs, config.kink);
    write_kink(dir, curve, synth::diagnose_kink(curve, config.kink_bandwidth));
    std::ofstream(dir / "config.ini", std::ios::binary | std::ios::trunc) << render_config(config);
  });
}

void match_into(const fs::path& dir, Timings& t) {
  run_stage("match", t, [&] {
    const auto data = read_generated(dir);
    const auto outcome = match_checked(data.market());
    io::write_assignment(dir / "assignment.csv", outcome.assignment);
    io::write_cutoffs(dir / "cutoffs.csv", outcome.cutoffs);
  });
}

void cutoffs_into(const ExperimentConfig& config, const fs::path& dir, Timings& t) {
  const std::uint64_t seed = seed_of(config);
  run_stage("cutoffs", t, [&] {
    const auto data = read_generated(dir);
    const auto m = data.market();
    const auto table = cutoffs::simulate_cutoffs(m, config.replications, derive_seed(seed, "cutoffs"),
                                                 config.threads);
    io::write_cutoff_samples(dir / "cutoff_samples.csv", table);
    io::write_probability_table(dir / "rational_probs.csv", "p", data.student_ids(), table.programs,
                                cutoffs::rational_probabilities(m, table));
  });
}

void beliefs_into(const ExperimentConfig& config, const fs::path& dir, Timings& t) {
  run_stage("beliefs", t, [&] {
    const auto data = read_generated(dir);
    const auto rational = io::read_probability_table(dir / "rational_probs.csv", "p", data.student_ids(),
                                                     data.program_ids());
    const auto b = analyse_beliefs(data, read_realized(dir), rational, config.pessimism_band);
    io::write_belief_records(dir / "belief_records.csv", b.records);
    io::write_omission_verdicts(dir / "omission_verdicts.csv", b.verdicts);
    write_json_file(dir / "outcome_rates.json", rates_to_json(b.rates));
  });
}

void estimate_into(const ExperimentConfig& config, const fs::path& dir, std::optional<econ::ChoiceMode> only,
                   Timings& t) {
  run_stage("estimate", t, [&] {
    const auto data = read_generated(dir);
    const auto b = read_belief_analysis(dir, data);
    const auto table = analysis_table(data, b, config.belief_encoding);
    write_estimates(dir, data, estimate_models(config, data, table, read_realized(dir), only));
  });
}

template <class F>
void command(const ExperimentConfig& config, const std::string& name, F&& body) {
  validate(config, true);
  Timings t;
  const fs::path dir = run_stage(name, t, [&] { return prepare_dir(config); });
  t.clear();
  body(dir, t);
  run_stage("manifest", t, [&] {
    write_run_log(dir, name, t);
    write_manifest(dir, name, config);
  });
}

}  // namespace

void cmd_generate(const ExperimentConfig& config) {
  command(config, "generate", [&](const fs::path& dir, Timings& t) { generate_into(config, dir, t); });
}

void cmd_match(const ExperimentConfig& config) {
  command(config, "match", [&](const fs::path& dir, Timings& t) { match_into(dir, t); });
}

void cmd_cutoffs(const ExperimentConfig& config) {
  command(config, "cutoffs", [&](const fs::path& dir, Timings& t) { cutoffs_into(config, dir, t); });
}

void cmd_beliefs(const ExperimentConfig& config) {
  command(config, "beliefs", [&](const fs::path& dir, Timings& t) { beliefs_into(config, dir, t); });
}

void cmd_estimate(const ExperimentConfig& config, std::optional<econ::ChoiceMode> only) {
  command(config, "estimate", [&](const fs::path& dir, Timings& t) { estimate_into(config, dir, only, t); });
}

void cmd_run_all(const ExperimentConfig& config) {
  command(config, "run-all", [&](const fs::path& dir, Timings& t) {
    generate_into(config, dir, t);
    match_into(dir, t);
    cutoffs_into(config, dir, t);
    beliefs_into(config, dir, t);
    estimate_into(config, dir, std::nullopt, t);
  });
}

}  // namespace admitsim::pipeline
