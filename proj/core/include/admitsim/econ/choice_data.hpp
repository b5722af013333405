#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "admitsim/market/types.hpp"
#include "admitsim/synth/population.hpp"
#include "admitsim/synth/reports.hpp"

namespace admitsim::econ {

enum class ChoiceMode { revealed, stated, stability };

std::string to_string(ChoiceMode mode);
ChoiceMode choice_mode_from_name(const std::string& name);

/// Single-choice data in long format. Student s owns alternatives
/// offsets[s] .. offsets[s + 1] - 1; `chosen[s]` indexes within that range.
struct ChoiceDataset {
  std::vector<ProgramId> programs;
  std::vector<std::string> feature_names;
  std::vector<StudentId> students;
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> program;  // program position per alternative
  Eigen::MatrixXd x;                   // features per alternative
  Eigen::VectorXd distance;            // thousands of km, coefficient fixed at -1
  std::vector<std::uint32_t> chosen;
  /// Students removed because their choice was outside their choice set.
  std::size_t dropped{0};

  std::size_t num_students() const { return students.size(); }
  std::size_t num_alternatives() const { return program.size(); }
};

/// Long-format data for one estimation regime. Revealed uses the true top
/// program over all programs; stated uses the first listed program over all
/// programs; stability uses the first listed program over the programs whose
/// realized cutoff admits the student, dropping students whose choice is not
/// in that set. `flags` and `rols` are aligned with `students`.
ChoiceDataset build_choice_dataset(ChoiceMode mode, std::span<const synth::StudentRecord> students,
                                   std::span<const market::ProgramRecord> programs,
                                   std::span<const synth::TruthFlags> flags,
                                   std::span<const market::RankOrderedList> rols,
                                   const std::map<ProgramId, market::CutoffValue>& realized);

}  // namespace admitsim::econ
