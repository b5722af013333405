#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "admitsim/common.hpp"
#include "admitsim/econ/linear.hpp"

namespace admitsim::econ {

/// Per-student analysis variables by name; NaN marks a missing value.
struct AnalysisTable {
  std::vector<StudentId> students;
  std::map<std::string, std::vector<double>> columns;

  std::size_t size() const { return students.size(); }
  void add(const std::string& name, std::vector<double> values);
};

enum class ModelSpec { eq1, eq2, eq3, eq5, wave2021_sp };

std::string to_string(ModelSpec spec);
ModelSpec model_spec_from_name(const std::string& name);

/// Characteristics of the socio-demographic and achievement block.
const std::vector<std::string>& ses_block();
/// Self-reported personality and life-situation block.
const std::vector<std::string>& personality_block();
/// Variables entered without standardisation.
bool is_indicator(const std::string& column);

struct DesignOptions {
  /// Response column; empty picks omits_top, or payoff_relevant for eq3.
  std::string outcome;
  /// Column holding the belief about the most-preferred program.
  std::string belief_column{"belief"};
  /// Dummies for each value of this column except the smallest.
  std::optional<std::string> fixed_effects;
  /// Weight column; when set the design carries weights for wls_fit.
  std::optional<std::string> weight_column;
  /// Suffix appended to the model id.
  std::string tag;
};

/// Builds the design for one model. Rows missing any used variable are
/// dropped; continuous regressors are then z-scored on the remaining rows
/// and interactions are products of the standardised terms. Throws
/// InputError naming a missing column.
DesignMatrix build_design(const AnalysisTable& table, ModelSpec spec, const DesignOptions& options = {});

/// (v - mean) / sd with the n-1 sample standard deviation; a constant column
/// maps to zeros.
std::vector<double> zscore(const std::vector<double>& values);

}  // namespace admitsim::econ
