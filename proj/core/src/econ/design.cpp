#include "admitsim/econ/design.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace admitsim::econ {
namespace {

struct Term {
  std::string name;
  std::vector<std::string> factors;  // product of these (standardised) columns
};

const std::vector<double>& column(const AnalysisTable& t, const std::string& name) {
  const auto it = t.columns.find(name);
  if (it == t.columns.end()) throw InputError(fmt::format("missing required column '{}'", name));
  return it->second;
}

}  // namespace

void AnalysisTable::add(const std::string& name, std::vector<double> values) {
  if (values.size() != students.size()) {
    throw InputError(fmt::format("column '{}' has {} rows, table has {}", name, values.size(), students.size()));
  }
  columns[name] = std::move(values);
}

std::string to_string(ModelSpec spec) {
  switch (spec) {
    case ModelSpec::eq1: return "eq1";
    case ModelSpec::eq2: return "eq2";
    case ModelSpec::eq3: return "eq3";
    case ModelSpec::eq5: return "eq5";
    case ModelSpec::wave2021_sp: return "wave2021-with-SP";
  }
  return "eq1";
}

ModelSpec model_spec_from_name(const std::string& name) {
  for (auto s : {ModelSpec::eq1, ModelSpec::eq2, ModelSpec::eq3, ModelSpec::eq5, ModelSpec::wave2021_sp}) {
    if (to_string(s) == name) return s;
  }
  throw InputError(fmt::format("unknown model '{}'", name));
}

const std::vector<std::string>& ses_block() {
  static const std::vector<std::string> block{"female",         "age",           "eligibility_score",
                                              "middle_school_gpa", "parents_income", "parents_edu"};
  return block;
}

const std::vector<std::string>& personality_block() {
  static const std::vector<std::string> block{"confidence", "risk_willingness", "postpone_willing",
                                              "rejection_is_failure", "difficult_to_comprehend"};
  return block;
}

bool is_indicator(const std::string& c) {
  static const std::set<std::string> indicators{"female",       "wave_2021",          "postpone_willing",
                                                "rejection_is_failure", "difficult_to_comprehend",
                                                "understands_sp", "pessimistic",        "optimistic"};
  return indicators.contains(c);
}

std::vector<double> zscore(const std::vector<double>& v) {
  if (v.empty()) return {};
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  std::vector<double> out(v.size(), 0.0);
  if (sd > 0) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
  }
  return out;
}

DesignMatrix build_design(const AnalysisTable& table, ModelSpec spec, const DesignOptions& options) {
  const std::string outcome =
      !options.outcome.empty() ? options.outcome : (spec == ModelSpec::eq3 ? "payoff_relevant" : "omits_top");
  const std::string& belief = options.belief_column;

  std::vector<Term> terms;
  const auto add_block = [&](const std::vector<std::string>& block) {
    for (const auto& c : block) terms.push_back({c, {c}});
  };
  bool wave_term = true;
  std::vector<std::string> filters;  // rows kept only where these equal 1
  switch (spec) {
    case ModelSpec::eq1:
      terms.push_back({belief, {belief}});
      break;
    case ModelSpec::eq2:
      terms.push_back({belief, {belief}});
      add_block(ses_block());
      add_block(personality_block());
      break;
    case ModelSpec::eq3:
      terms.push_back({"pessimistic", {"pessimistic"}});
      add_block(ses_block());
      add_block(personality_block());
      break;
    case ModelSpec::eq5:
      terms.push_back({belief, {belief}});
      add_block(ses_block());
      add_block(personality_block());
      for (const auto* block : {&ses_block(), &personality_block()}) {
        for (const auto& c : *block) terms.push_back({belief + ":" + c, {belief, c}});
      }
      break;
    case ModelSpec::wave2021_sp:
      terms.push_back({belief, {belief}});
      add_block(ses_block());
      add_block(personality_block());
      terms.push_back({"understands_sp", {"understands_sp"}});
      filters.push_back("wave_2021");
      wave_term = false;
      break;
  }
  if (wave_term) terms.push_back({"wave_2021", {"wave_2021"}});

  // Listwise deletion over every variable the model touches.
  std::set<std::string> used{outcome};
  for (const auto& t : terms) used.insert(t.factors.begin(), t.factors.end());
  for (const auto& f : filters) used.insert(f);
  if (options.fixed_effects) used.insert(*options.fixed_effects);
  if (options.weight_column) used.insert(*options.weight_column);
  if (spec == ModelSpec::eq3) used.insert("optimistic");

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < table.size(); ++i) {
    bool complete = true;
    for (const auto& c : used) complete = complete && !std::isnan(column(table, c)[i]);
    for (const auto& f : filters) complete = complete && column(table, f)[i] == 1.0;
    if (complete) keep.push_back(i);
  }
  const auto subset = [&](const std::string& c) {
    const auto& all = column(table, c);
    std::vector<double> v(keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r) v[r] = all[keep[r]];
    return v;
  };

  // The optimistic indicator is identified only when some rows are neither
  // pessimistic nor optimistic.
  if (spec == ModelSpec::eq3) {
    const auto pess = subset("pessimistic");
    const auto opt = subset("optimistic");
    bool any_calibrated = false;
    for (std::size_t r = 0; r < keep.size(); ++r) any_calibrated = any_calibrated || (pess[r] == 0 && opt[r] == 0);
    if (any_calibrated) terms.insert(terms.begin() + 1, Term{"optimistic", {"optimistic"}});
  }

  std::map<std::string, std::vector<double>> prepared;
  for (const auto& t : terms) {
    for (const auto& f : t.factors) {
      if (!prepared.contains(f)) prepared[f] = is_indicator(f) ? subset(f) : zscore(subset(f));
    }
  }

  DesignMatrix d;
  d.model_id = to_string(spec) + options.tag;
  d.outcome = outcome;
  d.columns.push_back("intercept");
  for (const auto& t : terms) d.columns.push_back(t.name);

  std::vector<double> fe_levels;
  if (options.fixed_effects) {
    const auto fe = subset(*options.fixed_effects);
    std::set<double> levels(fe.begin(), fe.end());
    fe_levels.assign(levels.begin(), levels.end());
    for (std::size_t l = 1; l < fe_levels.size(); ++l) {
      d.columns.push_back(fmt::format("fe[{}]", fe_levels[l]));
    }
  }

  const auto n = static_cast<Eigen::Index>(keep.size());
  d.x.resize(n, static_cast<Eigen::Index>(d.columns.size()));
  const auto y = subset(outcome);
  d.y = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  d.x.col(0).setOnes();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    auto col = d.x.col(static_cast<Eigen::Index>(k + 1));
    col.setOnes();
    for (const auto& f : terms[k].factors) col.array() *= Eigen::Map<const Eigen::ArrayXd>(prepared[f].data(), n);
  }
  if (options.fixed_effects) {
    const auto fe = subset(*options.fixed_effects);
    const auto base = static_cast<Eigen::Index>(terms.size() + 1);
    for (std::size_t l = 1; l < fe_levels.size(); ++l) {
      for (Eigen::Index r = 0; r < n; ++r) {
        d.x(r, base + static_cast<Eigen::Index>(l - 1)) = fe[static_cast<std::size_t>(r)] == fe_levels[l] ? 1.0 : 0.0;
      }
    }
  }
  if (options.weight_column) {
    const auto w = subset(*options.weight_column);
    d.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), n);
  }
  for (std::size_t r : keep) d.rows.push_back(table.students[r]);
  return d;
}

}  // namespace admitsim::econ
