#include "admitsim/econ/choice_data.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "admitsim/synth/config.hpp"
#include "admitsim/synth/utilities.hpp"

namespace admitsim::econ {

std::string to_string(ChoiceMode mode) {
  switch (mode) {
    case ChoiceMode::revealed: return "revealed";
    case ChoiceMode::stated: return "stated";
    case ChoiceMode::stability: return "stability";
  }
  return "revealed";
}

ChoiceMode choice_mode_from_name(const std::string& name) {
  for (auto m : {ChoiceMode::revealed, ChoiceMode::stated, ChoiceMode::stability}) {
    if (to_string(m) == name) return m;
  }
  throw InputError(fmt::format("unknown estimation mode '{}'", name));
}

ChoiceDataset build_choice_dataset(ChoiceMode mode, std::span<const synth::StudentRecord> students,
                                   std::span<const market::ProgramRecord> programs,
                                   std::span<const synth::TruthFlags> flags,
                                   std::span<const market::RankOrderedList> rols,
                                   const std::map<ProgramId, market::CutoffValue>& realized) {
  if (flags.size() != students.size() || rols.size() != students.size()) {
    throw InputError("choice data needs flags and lists aligned with students");
  }
  std::map<ProgramId, std::uint32_t> position;
  for (std::size_t j = 0; j < programs.size(); ++j) position.emplace(programs[j].id, static_cast<std::uint32_t>(j));

  ChoiceDataset d;
  for (const auto& p : programs) d.programs.push_back(p.id);
  d.feature_names.assign(synth::kFeatureNames.begin(), synth::kFeatureNames.end());
  std::vector<double> xs;
  std::vector<double> dist;

  for (std::size_t i = 0; i < students.size(); ++i) {
    const auto& s = students[i];
    if (flags[i].student != s.id || rols[i].student != s.id) {
      throw InputError(fmt::format("flags or list out of order at student {}", s.id.value));
    }
    if (mode != ChoiceMode::revealed && rols[i].entries.empty()) {
      throw InputError(fmt::format("student {} submitted an empty list", s.id.value));
    }
    const ProgramId choice = mode == ChoiceMode::revealed ? flags[i].true_top : rols[i].entries.front();
    if (!position.contains(choice)) throw InputError(fmt::format("unknown program {}", choice.value));

    std::vector<std::uint32_t> set;
    for (std::size_t j = 0; j < programs.size(); ++j) {
      if (mode == ChoiceMode::stability) {
        const auto it = realized.find(programs[j].id);
        if (it == realized.end()) throw InputError(fmt::format("no cutoff for program {}", programs[j].id.value));
        if (!it->second.admits(s.eligibility_score)) continue;
      }
      set.push_back(static_cast<std::uint32_t>(j));
    }
    const auto chosen_at = std::find(set.begin(), set.end(), position.at(choice));
    if (chosen_at == set.end()) {
      ++d.dropped;
      continue;
    }
    d.students.push_back(s.id);
    d.chosen.push_back(static_cast<std::uint32_t>(chosen_at - set.begin()));
    for (std::uint32_t j : set) {
      d.program.push_back(j);
      const auto f = synth::features(s, programs[j]);
      xs.insert(xs.end(), f.begin(), f.end());
      dist.push_back(synth::distance_offset(s, programs[j]));
    }
    d.offsets.push_back(d.program.size());
  }
  const auto rows = static_cast<Eigen::Index>(d.program.size());
  const auto k = static_cast<Eigen::Index>(synth::kFeatureCount);
  d.x = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(xs.data(), rows, k);
  d.distance = Eigen::Map<const Eigen::VectorXd>(dist.data(), rows);
  return d;
}

}  // namespace admitsim::econ
