#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "admitsim/market/types.hpp"
#include "admitsim/synth/config.hpp"
#include "admitsim/synth/population.hpp"

namespace admitsim::synth {

/// Stated admission beliefs: `main(i, j)` for admission by eligibility score
/// and `alternative[i]` for the alternative admission channel.
struct SubjectiveBeliefs {
  Eigen::MatrixXd main;
  std::vector<double> alternative;
};

/// Noise-free belief of a student with `score` facing last year's `prior`
/// cutoff, at the model's mean decay or a student's own.
double anchor_belief(const BeliefModel& model, double score, const market::CutoffValue& prior);
double anchor_belief(const BeliefModel& model, double score, const market::CutoffValue& prior, double decay);

/// Draws beliefs for every student and program; `prior_cutoffs` is aligned
/// with the program list.
SubjectiveBeliefs generate_beliefs(std::span<const StudentRecord> students,
                                   std::span<const market::CutoffValue> prior_cutoffs, const BeliefModel& model,
                                   std::uint64_t seed);

}  // namespace admitsim::synth
