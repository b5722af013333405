#pragma once

#include <filesystem>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "admitsim/belief/analysis.hpp"
#include "admitsim/cutoffs/simulation.hpp"
#include "admitsim/econ/model_fit.hpp"
#include "admitsim/market/types.hpp"
#include "admitsim/synth/population.hpp"
#include "admitsim/synth/reports.hpp"

namespace admitsim::io {

namespace fs = std::filesystem;

// Every reader throws InputError with the file and line of the first bad
// record.

void write_students(const fs::path& path, const std::vector<synth::StudentRecord>& students);
std::vector<synth::StudentRecord> read_students(const fs::path& path);

void write_programs(const fs::path& path, const std::vector<market::ProgramRecord>& programs);
std::vector<market::ProgramRecord> read_programs(const fs::path& path);

/// One row per (student, rank, program), ranks from 1.
void write_rols(const fs::path& path, const std::vector<market::RankOrderedList>& rols);
/// Rows may come in any order; ranks must be 1..L without gaps. Lists are
/// returned in ascending student id.
std::vector<market::RankOrderedList> read_rols(const fs::path& path);

/// student_id,program_id with an empty program for unassigned students.
void write_assignment(const fs::path& path, const std::map<StudentId, std::optional<ProgramId>>& assignment);
std::map<StudentId, std::optional<ProgramId>> read_assignment(const fs::path& path);

/// program_id,cutoff with OPEN for undersubscribed programs.
void write_cutoffs(const fs::path& path, const std::map<ProgramId, market::CutoffValue>& cutoffs);
std::map<ProgramId, market::CutoffValue> read_cutoffs(const fs::path& path);

void write_truth_flags(const fs::path& path, const std::vector<synth::TruthFlags>& flags);
std::vector<synth::TruthFlags> read_truth_flags(const fs::path& path);

/// Dense student x program probability table as student_id,program_id,<value>.
void write_probability_table(const fs::path& path, const std::string& value_name,
                             const std::vector<StudentId>& students, const std::vector<ProgramId>& programs,
                             const Eigen::MatrixXd& table);
/// Rebuilds the dense table in the given student and program order; every
/// cell must be present exactly once.
Eigen::MatrixXd read_probability_table(const fs::path& path, const std::string& value_name,
                                       const std::vector<StudentId>& students,
                                       const std::vector<ProgramId>& programs);

void write_alternative_beliefs(const fs::path& path, const std::vector<StudentId>& students,
                               const std::vector<double>& beliefs);
std::vector<double> read_alternative_beliefs(const fs::path& path, const std::vector<StudentId>& students);

void write_cutoff_samples(const fs::path& path, const cutoffs::CutoffSampleTable& table);

void write_belief_records(const fs::path& path, const std::vector<belief::BeliefRecord>& records);
std::vector<belief::BeliefRecord> read_belief_records(const fs::path& path);

void write_omission_verdicts(const fs::path& path, const std::vector<belief::OmissionVerdict>& verdicts);
std::vector<belief::OmissionVerdict> read_omission_verdicts(const fs::path& path);

/// term,estimate,se,ci_lo,ci_hi,model_id with 95% normal intervals.
void write_coefficients(const fs::path& path, const std::vector<econ::ModelFit>& fits);

}  // namespace admitsim::io
