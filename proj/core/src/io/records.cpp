#include "admitsim/io/records.hpp"

#include <fmt/format.h>

#include "admitsim/io/csv.hpp"

namespace admitsim::io {
namespace {

std::string b(bool v) { return v ? "1" : "0"; }
std::string d(double v) { return format_double(v); }
std::string id(std::int64_t v) { return std::to_string(v); }

std::string where(const CsvTable& t, std::size_t row) { return fmt::format("{}:{}", t.source.string(), row + 2); }

std::string cutoff_text(const market::CutoffValue& c) { return c.is_open() ? "OPEN" : d(c.value()); }

market::CutoffValue parse_cutoff(const std::string& text, const std::string& at) {
  return text == "OPEN" ? market::CutoffValue::open() : market::CutoffValue::at(parse_double(text, at));
}

// Reads named columns of each row through a callback receiving a field getter.
template <class F>
void for_each_row(const CsvTable& t, F&& f) {
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto get = [&](const std::string& name) -> const std::string& { return t.rows[r][t.column(name)]; };
    f(get, where(t, r));
  }
}

}  // namespace

void write_students(const fs::path& path, const std::vector<synth::StudentRecord>& students) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(students.size());
  for (const auto& s : students) {
    rows.push_back({id(s.id.value), d(s.eligibility_score), d(s.middle_school_gpa), d(s.age), b(s.female),
                    d(s.parents_income_pct), d(s.parents_edu_years), std::to_string(s.confidence),
                    std::to_string(s.risk_willingness), b(s.postpone_willing), b(s.rejection_is_failure),
                    b(s.difficult_to_comprehend), s.understands_sp ? b(*s.understands_sp) : "",
                    b(s.survey_wave_2021), d(s.location.x_km), d(s.location.y_km)});
  }
  write_csv(path,
            {"id", "score", "middle_school_gpa", "age", "female", "parents_income", "parents_edu", "confidence",
             "risk_willingness", "postpone_willing", "rejection_is_failure", "difficult_to_comprehend",
             "understands_sp", "survey_wave_2021", "x_km", "y_km"},
            rows);
}

std::vector<synth::StudentRecord> read_students(const fs::path& path) {
  const CsvTable t = read_csv(path);
  std::vector<synth::StudentRecord> out;
  for_each_row(t, [&](const auto& get, const std::string& at) {
    synth::StudentRecord s;
    s.id = StudentId{parse_int(get("id"), at)};
    s.eligibility_score = parse_double(get("score"), at);
    s.middle_school_gpa = parse_double(get("middle_school_gpa"), at);
    s.age = parse_double(get("age"), at);
    s.female = parse_bool(get("female"), at);
    s.parents_income_pct = parse_double(get("parents_income"), at);
    s.parents_edu_years = parse_double(get("parents_edu"), at);
    s.confidence = static_cast<int>(parse_int(get("confidence"), at));
    s.risk_willingness = static_cast<int>(parse_int(get("risk_willingness"), at));
    s.postpone_willing = parse_bool(get("postpone_willing"), at);
    s.rejection_is_failure = parse_bool(get("rejection_is_failure"), at);
    s.difficult_to_comprehend = parse_bool(get("difficult_to_comprehend"), at);
    if (!get("understands_sp").empty()) s.understands_sp = parse_bool(get("understands_sp"), at);
    s.survey_wave_2021 = parse_bool(get("survey_wave_2021"), at);
    s.location = {parse_double(get("x_km"), at), parse_double(get("y_km"), at)};
    out.push_back(s);
  });
  return out;
}

void write_programs(const fs::path& path, const std::vector<market::ProgramRecord>& programs) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : programs) {
    rows.push_back({id(p.id.value), std::to_string(p.capacity), d(p.location.x_km), d(p.location.y_km),
                    d(p.peer_quality), d(p.same_gender_share_female), d(p.peer_parents_income)});
  }
  write_csv(path,
            {"id", "capacity", "x_km", "y_km", "peer_quality", "same_gender_share_female", "peer_parents_income"},
            rows);
}

std::vector<market::ProgramRecord> read_programs(const fs::path& path) {
  const CsvTable t = read_csv(path);
  std::vector<market::ProgramRecord> out;
  for_each_row(t, [&](const auto& get, const std::string& at) {
    market::ProgramRecord p;
    p.id = ProgramId{parse_int(get("id"), at)};
    p.capacity = static_cast<int>(parse_int(get("capacity"), at));
    p.location = {parse_double(get("x_km"), at), parse_double(get("y_km"), at)};
    p.peer_quality = parse_double(get("peer_quality"), at);
    p.same_gender_share_female = parse_double(get("same_gender_share_female"), at);
    p.peer_parents_income = parse_double(get("peer_parents_income"), at);
    if (p.capacity < 1) throw InputError(fmt::format("{}: capacity must be at least 1", at));
    if (p.same_gender_share_female < 0 || p.same_gender_share_female > 1 || p.peer_parents_income < 0 ||
        p.peer_parents_income > 1) {
      throw InputError(fmt::format("{}: shares must lie in [0, 1]", at));
    }
    out.push_back(p);
  });
  return out;
}

void write_rols(const fs::path& path, const std::vector<market::RankOrderedList>& rols) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : rols) {
    for (std::size_t k = 0; k < r.entries.size(); ++k) {
      rows.push_back({id(r.student.value), std::to_string(k + 1), id(r.entries[k].value)});
    }
  }
  write_csv(path, {"student_id", "rank", "program_id"}, rows);
}

std::vector<market::RankOrderedList> read_rols(const fs::path& path) {
  const CsvTable t = read_csv(path);
  std::map<StudentId, std::map<std::int64_t, ProgramId>> ranked;
  for_each_row(t, [&](const auto& get, const std::string& at) {
    const StudentId s{parse_int(get("student_id"), at)};
    const std::int64_t rank = parse_int(get("rank"), at);
    if (!ranked[s].emplace(rank, ProgramId{parse_int(get("program_id"), at)}).second) {
      throw InputError(fmt::format("{}: duplicate rank {} for student {}", at, rank, s.value));
    }
  });
  std::vector<market::RankOrderedList> out;
  for (const auto& [s, entries] : ranked) {
    market::RankOrderedList rol{s, {}};
    std::int64_t expected = 1;
    for (const auto& [rank, p] : entries) {
      if (rank != expected++) {
        throw InputError(fmt::format("{}: ranks of student {} are not 1..L", path.string(), s.value));
      }
      rol.entries.push_back(p);
    }
    out.push_back(std::move(rol));
  }
  return out;
}

void write_assignment(const fs::path& path, const std::map<StudentId, std::optional<ProgramId>>& assignment) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [s, p] : assignment) rows.push_back({id(s.value), p ? id(p->value) : ""});
  write_csv(path, {"student_id", "program_id"}, rows);
}

std::map<StudentId, std::optional<ProgramId>> read_assignment(const fs::path& path) {
  const CsvTable t = read_csv(path);
  std::map<StudentId, std::optional<ProgramId>> out;
  for_each_row(t, [&](const auto& get, const std::string& at) {
    std::optional<ProgramId> p;
    if (!get("program_id").empty()) p = ProgramId{parse_int(get("program_id"), at)};
    out.emplace(StudentId{parse_int(get("student_id"), at)}, p);
  });
  return out;
}

void write_cutoffs(const fs::path& path, const std::map<ProgramId, market::CutoffValue>& cutoffs) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [p, c] : cutoffs) rows.push_back({id(p.value), cutoff_text(c)});
  write_csv(path, {"program_id", "cutoff"}, rows);
}

std::map<ProgramId, market::CutoffValue> read_cutoffs(const fs::path& path) {
  const CsvTable t = read_csv(path);
  std::map<ProgramId, market::CutoffValue> out;
  for_each_row(t, [&](const auto& get, const std::string& at) {
    out.emplace(ProgramId{parse_int(get("program_id"), at)}, parse_cutoff(get("cutoff"), at));
  });
  return out;
}

void write_truth_flags(const fs::path& path, const std::vector<synth::TruthFlags>& flags) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& f : flags) {
    rows.push_back({id(f.student.value), b(f.non_truthful), b(f.omits_top), id(f.true_top.value)});
  }
  write_csv(path, {"student_id", "non_truthful", "omits_top", "true_top_program"}, rows);
}

std::vector<synth::TruthFlags> read_truth_flags(const fs::path& path) {
  const CsvTable t = read_csv(path);
  std::vector<synth::TruthFlags> out;
  for_each_row(t, [&](const auto& get, const std::string& at) {
    synth::TruthFlags f;
    f.student = StudentId{parse_int(get("student_id"), at)};
    f.non_truthful = parse_bool(get("non_truthful"), at);
    f.omits_top = parse_bool(get("omits_top"), at);
    f.true_top = ProgramId{parse_int(get("true_top_program"), at)};
    out.push_back(f);
  });
  return out;
}

void write_probability_table(const fs::path& path, const std::string& value_name,
                             const std::vector<StudentId>& students, const std::vector<ProgramId>& programs,
                             const Eigen::MatrixXd& table) {
  if (static_cast<std::size_t>(table.rows()) != students.size() ||
      static_cast<std::size_t>(table.cols()) != programs.size()) {
    throw InputError(fmt::format("{}: table shape does not match ids", path.string()));
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(students.size() * programs.size());
  for (std::size_t i = 0; i < students.size(); ++i) {
    for (std::size_t j = 0; j < programs.size(); ++j) {
      rows.push_back({id(students[i].value), id(programs[j].value),
                      d(table(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))});
    }
  }
  write_csv(path, {"student_id", "program_id", value_name}, rows);
}

Eigen::MatrixXd read_probability_table(const fs::path& path, const std::string& value_name,
                                       const std::vector<StudentId>& students,
                                       const std::vector<ProgramId>& programs) {
  std::map<StudentId, Eigen::Index> row;
  for (std::size_t i = 0; i < students.size(); ++i) row.emplace(students[i], static_cast<Eigen::Index>(i));
  std::map<ProgramId, Eigen::Index> col;
  for (std::size_t j = 0; j < programs.size(); ++j) col.emplace(programs[j], static_cast<Eigen::Index>(j));

  const CsvTable t = read_csv(path);
  Eigen::MatrixXd out = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(students.size()),
                                                  static_cast<Eigen::Index>(programs.size()),
                                                  std::numeric_limits<double>::quiet_NaN());
  for_each_row(t, [&](const auto& get, const std::string& at) {
    const auto r = row.find(StudentId{parse_int(get("student_id"), at)});
    const auto c = col.find(ProgramId{parse_int(get("program_id"), at)});
    if (r == row.end() || c == col.end()) throw InputError(fmt::format("{}: unknown student or program", at));
    if (!std::isnan(out(r->second, c->second))) throw InputError(fmt::format("{}: duplicate cell", at));
    const double v = parse_double(get(value_name), at);
    if (!(v >= 0 && v <= 1)) throw InputError(fmt::format("{}: probability {} outside [0, 1]", at, v));
    out(r->second, c->second) = v;
  });
  if (out.hasNaN()) throw InputError(fmt::format("{}: table is incomplete", path.string()));
  return out;
}

void write_alternative_beliefs(const fs::path& path, const std::vector<StudentId>& students,
                               const std::vector<double>& beliefs) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < students.size(); ++i) rows.push_back({id(students[i].value), d(beliefs.at(i))});
  write_csv(path, {"student_id", "p_hat_alt"}, rows);
}

std::vector<double> read_alternative_beliefs(const fs::path& path, const std::vector<StudentId>& students) {
  const CsvTable t = read_csv(path);
  std::map<StudentId, double> by_id;
  for_each_row(t, [&](const auto& get, const std::string& at) {
    by_id[StudentId{parse_int(get("student_id"), at)}] = parse_double(get("p_hat_alt"), at);
  });
  std::vector<double> out;
  for (const auto& s : students) {
    const auto it = by_id.find(s);
    if (it == by_id.end()) throw InputError(fmt::format("{}: no belief for student {}", path.string(), s.value));
    out.push_back(it->second);
  }
  return out;
}

void write_cutoff_samples(const fs::path& path, const cutoffs::CutoffSampleTable& table) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t j = 0; j < table.programs.size(); ++j) {
    for (std::size_t r = 0; r < table.replications(); ++r) {
      rows.push_back({id(table.programs[j].value), std::to_string(r + 1), cutoff_text(table.samples[j][r])});
    }
  }
  write_csv(path, {"program_id", "replication", "cutoff"}, rows);
}

void write_belief_records(const fs::path& path, const std::vector<belief::BeliefRecord>& records) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : records) {
    rows.push_back({id(r.student.value), id(r.program.value), d(r.subjective), r.alternative ? d(*r.alternative) : "",
                    d(r.rational), d(r.error), belief::to_string(r.pessimism)});
  }
  write_csv(path, {"student_id", "program_id", "subjective", "alternative", "rational", "belief_error",
                   "pessimism_class"},
            rows);
}

std::vector<belief::BeliefRecord> read_belief_records(const fs::path& path) {
  const CsvTable t = read_csv(path);
  std::vector<belief::BeliefRecord> out;
  for_each_row(t, [&](const auto& get, const std::string& at) {
    belief::BeliefRecord r;
    r.student = StudentId{parse_int(get("student_id"), at)};
    r.program = ProgramId{parse_int(get("program_id"), at)};
    r.subjective = parse_double(get("subjective"), at);
    if (!get("alternative").empty()) r.alternative = parse_double(get("alternative"), at);
    r.rational = parse_double(get("rational"), at);
    r.error = parse_double(get("belief_error"), at);
    r.pessimism = belief::pessimism_class_from_name(get("pessimism_class"));
    out.push_back(r);
  });
  return out;
}

void write_omission_verdicts(const fs::path& path, const std::vector<belief::OmissionVerdict>& verdicts) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& v : verdicts) {
    rows.push_back({id(v.student.value), id(v.omitted_program.value), b(v.payoff_relevant),
                    cutoff_text(v.realized_cutoff)});
  }
  write_csv(path, {"student_id", "omitted_program_id", "payoff_relevant", "realized_cutoff"}, rows);
}

std::vector<belief::OmissionVerdict> read_omission_verdicts(const fs::path& path) {
  const CsvTable t = read_csv(path);
  std::vector<belief::OmissionVerdict> out;
  for_each_row(t, [&](const auto& get, const std::string& at) {
    belief::OmissionVerdict v;
    v.student = StudentId{parse_int(get("student_id"), at)};
    v.omitted_program = ProgramId{parse_int(get("omitted_program_id"), at)};
    v.payoff_relevant = parse_bool(get("payoff_relevant"), at);
    v.realized_cutoff = parse_cutoff(get("realized_cutoff"), at);
    out.push_back(v);
  });
  return out;
}

void write_coefficients(const fs::path& path, const std::vector<econ::ModelFit>& fits) {
  constexpr double kZ95 = 1.959963984540054;
  std::vector<std::vector<std::string>> rows;
  for (const auto& f : fits) {
    for (std::size_t k = 0; k < f.terms.size(); ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      const double est = f.coef(kk);
      const double se = f.se(kk);
      rows.push_back({f.terms[k], d(est), d(se), d(est - kZ95 * se), d(est + kZ95 * se), f.model_id});
    }
  }
  write_csv(path, {"term", "estimate", "se", "ci_lo", "ci_hi", "model_id"}, rows);
}

}  // namespace admitsim::io
