#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "admitsim/common.hpp"
#include "admitsim/econ/choice_data.hpp"
#include "admitsim/pipeline/config.hpp"
#include "admitsim/pipeline/presets.hpp"
#include "admitsim/pipeline/stages.hpp"
#include "admitsim/pipeline/verify.hpp"

namespace ap = admitsim::pipeline;

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string preset;
  std::optional<std::size_t> replications;
};

ap::ExperimentConfig resolve(const CommonOptions& o) {
  ap::ExperimentConfig config;
  if (!o.config_path.empty()) {
    config = ap::load_config(o.config_path);
    if (!o.preset.empty() && o.preset != config.preset) {
      throw admitsim::ConfigError("--preset", fmt::format("conflicts with preset '{}' selected by {}",
                                                          config.preset, o.config_path));
    }
  } else {
    config = ap::make_preset(o.preset.empty() ? "paper-like" : o.preset);
  }
  if (o.seed) config.seed = o.seed;
  if (!o.out.empty()) config.output_dir = o.out;
  if (o.replications) config.replications = *o.replications;
  ap::validate(config, true);
  return config;
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "INI configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Master seed (overrides the config)");
  cmd->add_option("--out", o.out, "Output directory (overrides the config)");
  cmd->add_option("--preset", o.preset, "Starting preset: paper-like, truthful or recovery");
  cmd->add_option("--replications", o.replications, "Cutoff-simulation replications");
}

int run_verify(const ap::VerifyOptions& options) {
  const auto report = ap::run_verification(options);
  fmt::print("strategy-proofness: {} instances, {} deviations checked, {} profitable\n", report.instances,
             report.deviations_checked, report.profitable_deviations);
  fmt::print("stability: {} markets, {} blocking pairs, {} feasibility violations, {} cutoff-rule mismatches\n",
             report.markets, report.blocking_pairs, report.feasibility_violations, report.cutoff_rule_mismatches);
  if (!report.clean()) {
    fmt::print(stderr, "verify: property violations found (mechanism: {})\n", options.fault);
    return ap::exit_code::property_violation;
  }
  fmt::print("verify: no violations\n");
  return ap::exit_code::success;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulates a centralized admission market with misreporting applicants and estimates demand."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ADMITSIM_CLI_VERSION));

  CommonOptions common;
  auto* generate = app.add_subcommand("generate", "Draw the population, beliefs and submitted lists");
  auto* match = app.add_subcommand("match", "Run deferred acceptance on the generated lists");
  auto* cutoffs = app.add_subcommand("cutoffs", "Bootstrap cutoffs and rational admission probabilities");
  auto* beliefs = app.add_subcommand("beliefs", "Belief records, omission verdicts and outcome rates");
  auto* estimate = app.add_subcommand("estimate", "Fit the linear and conditional-logit models");
  auto* run_all = app.add_subcommand("run-all", "Every stage in order");
  for (auto* cmd : {generate, match, cutoffs, beliefs, estimate, run_all}) add_common(cmd, common);

  std::string mode;
  estimate->add_option("--mode", mode, "Restrict the conditional logit to one regime")
      ->check(CLI::IsMember({"revealed", "stated", "stability"}));

  ap::VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "Strategy-proofness and stability property suites");
  verify->add_option("--instances", verify_options.instances, "Random small instances");
  verify->add_option("--max-students", verify_options.max_students, "Students per small instance (at most 5)");
  verify->add_option("--max-programs", verify_options.max_programs, "Programs per small instance (at most 4)");
  verify->add_option("--markets", verify_options.markets, "Random markets for the stability suite");
  verify->add_option("--max-market-students", verify_options.max_market_students, "Largest random market");
  verify->add_option("--seed", verify_options.seed, "Seed for the random instances");
  verify->add_option("--fault", verify_options.fault, "Inject a faulty mechanism: none or capacity-plus-one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ap::exit_code::config_error;
  }

  try {
    if (verify->parsed()) return run_verify(verify_options);

    const auto config = resolve(common);
    if (generate->parsed()) ap::cmd_generate(config);
    if (match->parsed()) ap::cmd_match(config);
    if (cutoffs->parsed()) ap::cmd_cutoffs(config);
    if (beliefs->parsed()) ap::cmd_beliefs(config);
    if (estimate->parsed()) {
      std::optional<admitsim::econ::ChoiceMode> only;
      if (!mode.empty()) only = admitsim::econ::choice_mode_from_name(mode);
      ap::cmd_estimate(config, only);
    }
    if (run_all->parsed()) ap::cmd_run_all(config);
    return ap::exit_code::success;
  } catch (const ap::StageError& e) {
    fmt::print(stderr, "error [{}]: {}\n", e.stage(), e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    const int code = ap::classify_current_exception();
    fmt::print(stderr, "error: {}\n", e.what());
    return code;
  }
}
