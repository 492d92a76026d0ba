#pragma once

// Brute-force LP oracle for small, bounded programs: every vertex is the
// solution of n active constraints (rows or bounds), so the optimum is the best
// feasible one among all n-subsets. Exponential; meant for n <= 6.

#include <cmath>
#include <optional>
#include <vector>

#include "sdss/lp.h"

namespace oracle {

struct Halfspace {
  std::vector<double> a;
  double b = 0.0;
  bool equality = false;  ///< a.x = b, otherwise a.x <= b
};

inline std::vector<Halfspace> halfspaces(const sdss::LinearProgram &lp) {
  const auto n = lp.variables.size();
  std::vector<Halfspace> out;
  for (const auto &c : lp.constraints) {
    Halfspace h{std::vector<double>(n, 0.0), c.rhs, c.relation == sdss::Relation::eq};
    for (const auto &t : c.row) h.a[t.var] += t.coeff;
    if (c.relation == sdss::Relation::ge) {
      for (auto &v : h.a) v = -v;
      h.b = -h.b;
    }
    out.push_back(std::move(h));
  }
  for (std::size_t j = 0; j < n; ++j) {
    Halfspace lo{std::vector<double>(n, 0.0), -lp.variables[j].lower, false};
    lo.a[j] = -1.0;
    out.push_back(lo);
    if (std::isfinite(lp.variables[j].upper)) {
      Halfspace hi{std::vector<double>(n, 0.0), lp.variables[j].upper, false};
      hi.a[j] = 1.0;
      out.push_back(hi);
    }
  }
  return out;
}

/// Gaussian elimination with partial pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs) {
  const auto n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) < 1e-10) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

struct Result {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> x;
};

/// Requires every variable to have a finite upper bound.
inline Result vertex_optimum(const sdss::LinearProgram &lp, double tol = 1e-7) {
  const auto n = lp.variables.size();
  const auto hs = halfspaces(lp);
  std::vector<double> cost(n, 0.0);
  for (const auto &t : lp.objective) cost[t.var] += t.coeff;

  std::vector<std::size_t> eqs, ineqs;
  for (std::size_t k = 0; k < hs.size(); ++k) (hs[k].equality ? eqs : ineqs).push_back(k);
  Result best;
  if (eqs.size() > n) {
    // Redundant equalities are possible but do not occur in the generated tests.
    return best;
  }
  const auto need = n - eqs.size();
  std::vector<std::size_t> pick(need);
  auto evaluate = [&]() {
    std::vector<std::vector<double>> m;
    std::vector<double> rhs;
    for (auto k : eqs) {
      m.push_back(hs[k].a);
      rhs.push_back(hs[k].b);
    }
    for (auto k : pick) {
      m.push_back(hs[ineqs[k]].a);
      rhs.push_back(hs[ineqs[k]].b);
    }
    auto x = solve_square(m, rhs);
    if (!x) return;
    for (const auto &h : hs) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += h.a[j] * (*x)[j];
      const double slack = tol * std::max(1.0, std::abs(h.b));
      if (h.equality ? std::abs(lhs - h.b) > slack : lhs > h.b + slack) return;
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) obj += cost[j] * (*x)[j];
    if (!best.feasible || obj < best.objective) best = {true, obj, *x};
  };
  // Lexicographic n-choose-k enumeration.
  if (need > ineqs.size()) return best;
  for (std::size_t i = 0; i < need; ++i) pick[i] = i;
  while (true) {
    evaluate();
    if (need == 0) break;
    std::size_t i = need;
    while (i > 0 && pick[i - 1] == ineqs.size() - need + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace oracle
