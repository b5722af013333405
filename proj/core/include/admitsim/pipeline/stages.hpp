#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "admitsim/belief/analysis.hpp"
#include "admitsim/cutoffs/simulation.hpp"
#include "admitsim/econ/choice_data.hpp"
#include "admitsim/econ/design.hpp"
#include "admitsim/econ/model_fit.hpp"
#include "admitsim/market/types.hpp"
#include "admitsim/pipeline/config.hpp"
#include "admitsim/synth/kink.hpp"
#include "admitsim/synth/population.hpp"
#include "admitsim/synth/reports.hpp"

namespace admitsim::pipeline {

/// A verification property (stability, feasibility, strategy-proofness)
/// failed.
class PropertyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pipeline stage failed; `exit_code` follows the CLI convention of the
/// underlying error.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, int exit_code, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)), exit_code_(exit_code) {}
  const std::string& stage() const { return stage_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int failure = 1;
inline constexpr int config_error = 2;
inline constexpr int property_violation = 3;
inline constexpr int numerical_failure = 4;
}  // namespace exit_code

/// Exit code for the exception currently being handled.
int classify_current_exception();

/// Generated inputs of an experiment, with every per-student table aligned to
/// `students` and every per-program table aligned to `programs`.
struct ExperimentData {
  std::vector<synth::StudentRecord> students;
  std::vector<market::ProgramRecord> programs;
  std::vector<market::RankOrderedList> rols;
  std::vector<synth::TruthFlags> flags;
  Eigen::MatrixXd subjective;
  std::vector<double> alternative;
  std::vector<market::CutoffValue> prior_cutoffs;
  std::array<double, synth::kFeatureCount> gamma{};
  std::vector<double> theta;

  market::Market market() const;
  std::vector<StudentId> student_ids() const;
  std::vector<ProgramId> program_ids() const;
};

ExperimentData generate_data(const ExperimentConfig& config, std::uint64_t seed);

/// Runs the mechanism and checks stability, feasibility and cutoff
/// self-consistency of the result; throws PropertyViolation otherwise.
market::MatchOutcome match_checked(const market::Market& market);

struct BeliefAnalysis {
  std::vector<belief::BeliefRecord> records;
  std::vector<belief::OmissionVerdict> verdicts;
  belief::OutcomeRates rates;
};

BeliefAnalysis analyse_beliefs(const ExperimentData& data, const std::map<ProgramId, market::CutoffValue>& realized,
                               const Eigen::MatrixXd& rational, double band);

/// Per-student regression variables: covariates, the belief about the true
/// top program, pessimism indicators, the three outcomes and top_program.
econ::AnalysisTable analysis_table(const ExperimentData& data, const BeliefAnalysis& beliefs,
                                   const std::string& belief_encoding);

/// Fits the configured models. `only` restricts the conditional-logit models
/// to one regime.
std::vector<econ::ModelFit> estimate_models(const ExperimentConfig& config, const ExperimentData& data,
                                            const econ::AnalysisTable& table,
                                            const std::map<ProgramId, market::CutoffValue>& realized,
                                            std::optional<econ::ChoiceMode> only = std::nullopt);

/// Demand estimates next to generator truth: one row per clogit term with the
/// estimate and standard error of each regime. Theta truths are relative to
/// the reference program.
struct ComparisonRow {
  std::string term;
  double truth{0.0};
  std::map<std::string, std::pair<double, double>> by_mode;
};
std::vector<ComparisonRow> demand_comparison(const ExperimentData& data, const std::vector<econ::ModelFit>& fits);

struct ExperimentResult {
  ExperimentData data;
  market::MatchOutcome outcome;
  cutoffs::CutoffSampleTable samples;
  Eigen::MatrixXd rational;
  BeliefAnalysis beliefs;
  econ::AnalysisTable table;
  std::vector<econ::ModelFit> fits;
  synth::KinkCurve kink;
  synth::KinkDiagnostic kink_diagnostic;
};

/// The whole pipeline without touching the file system.
ExperimentResult run_experiment(const ExperimentConfig& config, std::uint64_t seed);

// File-backed commands. Each reads its inputs from config.output_dir, writes
// its artifacts there and refreshes manifest.json. Failures are rethrown as
// StageError naming the stage; earlier artifacts are left in place.
void cmd_generate(const ExperimentConfig& config);
void cmd_match(const ExperimentConfig& config);
void cmd_cutoffs(const ExperimentConfig& config);
void cmd_beliefs(const ExperimentConfig& config);
void cmd_estimate(const ExperimentConfig& config, std::optional<econ::ChoiceMode> only = std::nullopt);
void cmd_run_all(const ExperimentConfig& config);

}  // namespace admitsim::pipeline
