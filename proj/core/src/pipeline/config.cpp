#include "admitsim/pipeline/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "admitsim/common.hpp"
#include "admitsim/market/strategy_proofness.hpp"
#include "admitsim/pipeline/presets.hpp"

namespace admitsim::pipeline {
namespace {

namespace pt = boost::property_tree;

struct Field {
  std::string section;
  std::string key;
  std::function<std::string()> get;
  std::function<void(const std::string&)> set;
};

double to_double(const std::string& s) {
  double v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument(fmt::format("'{}' is not a number", s));
  return v;
}

std::uint64_t to_unsigned(const std::string& s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument(fmt::format("'{}' is not a non-negative integer", s));
  }
  return v;
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument(fmt::format("'{}' is not a boolean", s));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::string num(double v) { return fmt::format("{}", v); }

Field real(std::string section, std::string key, double& ref) {
  return {std::move(section), std::move(key), [&ref] { return num(ref); },
          [&ref](const std::string& s) { ref = to_double(s); }};
}

Field count(std::string section, std::string key, std::size_t& ref) {
  return {std::move(section), std::move(key), [&ref] { return std::to_string(ref); },
          [&ref](const std::string& s) { ref = static_cast<std::size_t>(to_unsigned(s)); }};
}

Field flag(std::string section, std::string key, bool& ref) {
  return {std::move(section), std::move(key), [&ref] { return ref ? std::string("true") : std::string("false"); },
          [&ref](const std::string& s) { ref = to_bool(s); }};
}

Field text(std::string section, std::string key, std::string& ref) {
  return {std::move(section), std::move(key), [&ref] { return ref; }, [&ref](const std::string& s) { ref = s; }};
}

void add_marginal(std::vector<Field>& f, const std::string& name, synth::ContinuousMarginal& m) {
  f.push_back(real("population", name + "_mean", m.mean));
  f.push_back(real("population", name + "_sd", m.sd));
  f.push_back(real("population", name + "_lo", m.lo));
  f.push_back(real("population", name + "_hi", m.hi));
}

std::vector<Field> fields(ExperimentConfig& c) {
  std::vector<Field> f;
  f.push_back(text("experiment", "preset", c.preset));
  f.push_back({"experiment", "seed", [&c] { return c.seed ? std::to_string(*c.seed) : std::string(); },
               [&c](const std::string& s) {
                 if (s.empty()) {
                   c.seed.reset();
                 } else {
                   c.seed = to_unsigned(s);
                 }
               }});
  f.push_back(count("experiment", "replications", c.replications));
  f.push_back(count("experiment", "threads", c.threads));
  f.push_back(real("experiment", "pessimism_band", c.pessimism_band));
  f.push_back(text("experiment", "belief_encoding", c.belief_encoding));
  f.push_back(flag("experiment", "program_fixed_effects", c.program_fixed_effects));
  f.push_back({"experiment", "models", [&c] { return fmt::format("{}", fmt::join(c.models, ",")); },
               [&c](const std::string& s) { c.models = split_list(s); }});
  f.push_back({"experiment", "output_dir", [&c] { return c.output_dir.string(); },
               [&c](const std::string& s) { c.output_dir = s; }});

  auto& pop = c.synth.population;
  f.push_back(count("population", "n_students", pop.n_students));
  add_marginal(f, "score", pop.eligibility_score);
  add_marginal(f, "gpa", pop.middle_school_gpa);
  add_marginal(f, "age", pop.age);
  add_marginal(f, "parents_income", pop.parents_income);
  add_marginal(f, "parents_edu", pop.parents_edu);
  add_marginal(f, "confidence", pop.confidence);
  add_marginal(f, "risk_willingness", pop.risk_willingness);
  f.push_back(real("population", "female_share", pop.female_share));
  f.push_back(real("population", "rejection_is_failure_share", pop.rejection_is_failure_share));
  f.push_back(real("population", "difficult_to_comprehend_share", pop.difficult_to_comprehend_share));
  f.push_back(real("population", "understands_sp_share", pop.understands_sp_share));
  f.push_back(real("population", "region_width_km", pop.region_width_km));
  f.push_back(real("population", "region_height_km", pop.region_height_km));

  auto& prog = c.synth.programs;
  f.push_back(count("programs", "n_programs", prog.n_programs));
  f.push_back(real("programs", "seat_ratio", prog.seat_ratio));
  f.push_back(real("programs", "capacity_dispersion", prog.capacity_dispersion));
  f.push_back(real("programs", "capacity_theta_slope", prog.capacity_theta_slope));
  f.push_back(real("programs", "theta_sd", prog.theta_sd));
  f.push_back(real("programs", "peer_quality_mean", prog.peer_quality_mean));
  f.push_back(real("programs", "peer_quality_sd", prog.peer_quality_sd));
  f.push_back(real("programs", "peer_quality_theta_corr", prog.peer_quality_theta_corr));
  f.push_back(real("programs", "gender_share_lo", prog.gender_share_lo));
  f.push_back(real("programs", "gender_share_hi", prog.gender_share_hi));
  f.push_back(real("programs", "peer_income_mean", prog.peer_income_mean));
  f.push_back(real("programs", "peer_income_sd", prog.peer_income_sd));
  f.push_back(real("programs", "peer_taste_centring", prog.peer_taste_centring));

  for (std::size_t k = 0; k < synth::kFeatureCount; ++k) {
    f.push_back(real("utility", "gamma_" + synth::kFeatureNames[k], c.synth.utility.gamma[k]));
  }

  auto& beh = c.synth.behavior;
  f.push_back({"behavior", "omission_rule", [&beh] { return synth::to_string(beh.rule); },
               [&beh](const std::string& s) { beh.rule = synth::omission_rule_from_name(s); }});
  f.push_back(real("behavior", "threshold", beh.threshold));
  f.push_back(real("behavior", "utility_cost", beh.utility_cost));
  f.push_back(real("behavior", "share_postponers", beh.share_postponers));
  f.push_back(real("behavior", "wave_2021_share", beh.wave_2021_share));
  f.push_back(count("behavior", "history_years", beh.history_years));
  f.push_back({"behavior", "list_length_probs",
               [&beh] {
                 std::vector<std::string> parts;
                 for (double p : beh.list_length_probs) parts.push_back(num(p));
                 return fmt::format("{}", fmt::join(parts, ","));
               },
               [&beh](const std::string& s) {
                 beh.list_length_probs.clear();
                 for (const auto& p : split_list(s)) beh.list_length_probs.push_back(to_double(p));
               }});

  auto& bel = beh.beliefs;
  f.push_back(real("beliefs", "ceiling", bel.ceiling));
  f.push_back(real("beliefs", "decay", bel.decay));
  f.push_back(real("beliefs", "decay_shape", bel.decay_shape));
  f.push_back(real("beliefs", "anchored_share", bel.anchored_share));
  f.push_back(real("beliefs", "shift", bel.shift));
  f.push_back(real("beliefs", "dispersion", bel.dispersion));
  f.push_back(real("beliefs", "student_share", bel.student_share));
  f.push_back(real("beliefs", "alt_mean_logit", bel.alt_mean_logit));
  f.push_back(real("beliefs", "alt_dispersion", bel.alt_dispersion));

  auto& w = beh.loadings;
  f.push_back(real("loadings", "confidence", w.confidence));
  f.push_back(real("loadings", "risk_willingness", w.risk_willingness));
  f.push_back(real("loadings", "postpone_willing", w.postpone_willing));
  f.push_back(real("loadings", "rejection_is_failure", w.rejection_is_failure));
  f.push_back(real("loadings", "difficult_to_comprehend", w.difficult_to_comprehend));
  f.push_back(real("loadings", "understands_sp", w.understands_sp));

  f.push_back(count("kink", "n_bins", c.kink.n_bins));
  f.push_back(real("kink", "half_width", c.kink.half_width));
  f.push_back(real("kink", "min_prior_cutoff", c.kink.min_prior_cutoff));
  f.push_back(flag("kink", "within_program", c.kink.within_program));
  f.push_back(count("kink", "bandwidth", c.kink_bandwidth));
  return f;
}

// "section.key" -> line number, for error locations.
std::map<std::string, std::size_t> key_lines(const std::string& text) {
  std::map<std::string, std::size_t> out;
  std::stringstream in(text);
  std::string line;
  std::string section;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == ';' || line[b] == '#') continue;
    if (line[b] == '[') {
      const auto e = line.find(']', b);
      section = line.substr(b + 1, e == std::string::npos ? std::string::npos : e - b - 1);
      out.emplace(section, n);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(b, eq - b);
    key.erase(key.find_last_not_of(" \t") + 1);
    out.emplace(section + "." + key, n);
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  try {
    std::stringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("{}:{}", origin, e.line()), e.message());
  }
  const auto lines = key_lines(text);
  const auto locate = [&](const std::string& section, const std::string& key) {
    const auto it = lines.find(key.empty() ? section : section + "." + key);
    const std::string name = key.empty() ? section : section + "." + key;
    return it == lines.end() ? fmt::format("{}: {}", origin, name) : fmt::format("{}:{}: {}", origin, it->second, name);
  };

  // The preset is applied first so that every other key overrides it.
  std::string preset = "paper-like";
  if (const auto exp = tree.get_child_optional("experiment")) {
    if (const auto p = exp->get_optional<std::string>("preset")) preset = *p;
  }
  ExperimentConfig config;
  try {
    config = make_preset(preset);
  } catch (const ConfigError& e) {
    throw ConfigError(locate("experiment", "preset"), e.what());
  }

  auto table = fields(config);
  for (const auto& [section, entries] : tree) {
    if (entries.empty() && !entries.data().empty()) {
      throw ConfigError(locate(section, ""), "key outside any section");
    }
    if (section == "correlation") {
      config.synth.population.correlations.clear();
      for (const auto& [key, value] : entries) {
        const auto colon = key.find(':');
        try {
          if (colon == std::string::npos) throw std::invalid_argument("expected 'covariate:covariate'");
          config.synth.population.correlations.push_back(
              {synth::covariate_from_name(key.substr(0, colon)), synth::covariate_from_name(key.substr(colon + 1)),
               to_double(value.data())});
        } catch (const std::exception& e) {
          throw ConfigError(locate(section, key), e.what());
        }
      }
      continue;
    }
    for (const auto& [key, value] : entries) {
      auto it = std::find_if(table.begin(), table.end(),
                             [&](const Field& f) { return f.section == section && f.key == key; });
      if (it == table.end()) throw ConfigError(locate(section, key), "unknown setting");
      try {
        it->set(value.data());
      } catch (const std::exception& e) {
        throw ConfigError(locate(section, key), e.what());
      }
    }
  }
  config.preset = preset;
  validate(config, false);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot read configuration file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

std::string render_config(const ExperimentConfig& config) {
  ExperimentConfig copy = config;
  std::string out;
  std::string section;
  for (const auto& f : fields(copy)) {
    if (f.section != section) {
      out += fmt::format("{}[{}]\n", section.empty() ? "" : "\n", f.section);
      section = f.section;
    }
    out += fmt::format("{} = {}\n", f.key, f.get());
  }
  out += "\n[correlation]\n";
  for (const auto& c : copy.synth.population.correlations) {
    out += fmt::format("{}:{} = {}\n", synth::covariate_name(c.a), synth::covariate_name(c.b), num(c.rho));
  }
  return out;
}

void validate(const ExperimentConfig& config, bool require_seed) {
  if (require_seed && !config.seed) throw ConfigError("experiment.seed", "a seed is required");
  synth::validate(config.synth);
  if (config.replications == 0) throw ConfigError("experiment.replications", "must be at least 1");
  if (config.threads == 0) throw ConfigError("experiment.threads", "must be at least 1");
  if (!(config.pessimism_band >= 0)) throw ConfigError("experiment.pessimism_band", "must be non-negative");
  if (config.belief_encoding != "subjective" && config.belief_encoding != "combined") {
    throw ConfigError("experiment.belief_encoding", "must be 'subjective' or 'combined'");
  }
  static const std::vector<std::string> known{"eq1", "eq2", "eq3", "eq5", "wave2021-with-SP",
                                              "clogit-revealed", "clogit-stated", "clogit-stability"};
  for (const auto& m : config.models) {
    if (std::find(known.begin(), known.end(), m) == known.end()) {
      throw ConfigError("experiment.models", fmt::format("unknown model '{}'", m));
    }
  }
  if (config.kink.n_bins < 5) throw ConfigError("kink.n_bins", "must be at least 5");
  if (!(config.kink.half_width > 0)) throw ConfigError("kink.half_width", "must be positive");
  if (config.kink_bandwidth < 1) throw ConfigError("kink.bandwidth", "must be at least 1");
}

}  // namespace admitsim::pipeline
