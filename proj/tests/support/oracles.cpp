#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {
namespace {

using admitsim::ProgramId;
using admitsim::StudentId;
using admitsim::market::Market;

// Rank of `p` in the student's list; lists.size() stands for "unassigned".
std::size_t rank_of(const std::vector<ProgramId>& list, const std::optional<ProgramId>& p) {
  if (!p) return list.size();
  return static_cast<std::size_t>(std::find(list.begin(), list.end(), *p) - list.begin());
}

const std::vector<ProgramId>& list_of(const Market& m, StudentId s) {
  static const std::vector<ProgramId> empty;
  for (const auto& r : m.rols) {
    if (r.student == s) return r.entries;
  }
  return empty;
}

bool higher_priority(const Market& m, StudentId a, StudentId b) {
  double sa = 0, sb = 0;
  for (const auto& x : m.applicants) {
    if (x.id == a) sa = x.score;
    if (x.id == b) sb = x.score;
  }
  if (sa != sb) return sa > sb;
  return a < b;
}

bool is_stable(const Market& m, const Assignment& asg) {
  for (const auto& prog : m.programs) {
    std::vector<StudentId> admitted;
    for (const auto& [s, p] : asg) {
      if (p == prog.id) admitted.push_back(s);
    }
    if (static_cast<int>(admitted.size()) > prog.capacity) return false;
    for (const auto& a : m.applicants) {
      const auto& list = list_of(m, a.id);
      const auto want = rank_of(list, prog.id);
      if (want >= list.size() || want >= rank_of(list, asg.at(a.id))) continue;
      if (static_cast<int>(admitted.size()) < prog.capacity) return false;
      for (StudentId other : admitted) {
        if (higher_priority(m, a.id, other)) return false;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<Assignment> all_stable_assignments(const Market& market) {
  std::vector<Assignment> out;
  const std::size_t n = market.applicants.size();
  std::vector<std::size_t> choice(n, 0);
  while (true) {
    Assignment asg;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& list = list_of(market, market.applicants[i].id);
      asg[market.applicants[i].id] = choice[i] < list.size() ? std::optional<ProgramId>(list[choice[i]]) : std::nullopt;
    }
    if (is_stable(market, asg)) out.push_back(asg);

    std::size_t i = 0;
    for (; i < n; ++i) {
      const std::size_t options = list_of(market, market.applicants[i].id).size() + 1;
      if (++choice[i] < options) break;
      choice[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

bool weakly_preferred_by_all(const Market& market, const Assignment& a, const Assignment& b) {
  for (const auto& ap : market.applicants) {
    const auto& list = list_of(market, ap.id);
    if (rank_of(list, a.at(ap.id)) > rank_of(list, b.at(ap.id))) return false;
  }
  return true;
}

std::vector<double> normal_equations(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
                                     const std::vector<double>& w) {
  const std::size_t n = x.size();
  const std::size_t k = x.front().size();
  std::vector<std::vector<long double>> a(k, std::vector<long double>(k + 1, 0.0L));
  for (std::size_t i = 0; i < n; ++i) {
    const long double wi = w.empty() ? 1.0L : w[i];
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) a[r][c] += wi * x[i][r] * x[i][c];
      a[r][k] += wi * x[i][r] * y[i];
    }
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    if (a[col][col] == 0.0L) throw std::runtime_error("singular normal equations");
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const long double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> b(k);
  for (std::size_t r = 0; r < k; ++r) b[r] = static_cast<double>(a[r][k] / a[r][r]);
  return b;
}

namespace {

// Lentz's method for the continued fraction of the incomplete beta.
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  const double front =
      std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double two_sided_t_p(double t, double dof) { return incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t)); }

double admission_share(double score, const std::vector<admitsim::market::CutoffValue>& cutoffs) {
  std::size_t hits = 0;
  for (const auto& c : cutoffs) {
    if (c.is_open() || c.value() <= score) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(cutoffs.size());
}

}  // namespace oracle
