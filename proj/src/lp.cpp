#include "sdss/lp.h"

#include <algorithm>
#include <cmath>

#include "sdss/error.h"

namespace sdss {

const char *to_string(Relation r) noexcept {
  switch (r) {
    case Relation::le:
      return "<=";
    case Relation::eq:
      return "=";
    case Relation::ge:
      return ">=";
  }
  return "?";
}

const char *to_string(LpStatus s) noexcept {
  switch (s) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "?";
}

std::size_t LinearProgram::add_variable(std::string name, double lower, double upper) {
  variables.push_back({std::move(name), lower, upper});
  return variables.size() - 1;
}

void LinearProgram::add_constraint(std::string name, std::vector<LpTerm> row, Relation rel, double rhs) {
  constraints.push_back({std::move(name), std::move(row), rel, rhs});
}

void LinearProgram::set_cost(std::size_t var, double coeff) {
  for (auto &t : objective) {
    if (t.var == var) {
      t.coeff = coeff;
      return;
    }
  }
  objective.push_back({var, coeff});
}

void LinearProgram::validate() const {
  for (const auto &v : variables) {
    if (std::isnan(v.lower) || std::isnan(v.upper)) throw DomainError("variable " + v.name + " has a NaN bound");
    if (!std::isfinite(v.lower)) throw DomainError("variable " + v.name + " needs a finite lower bound");
    if (v.lower > v.upper) throw DomainError("variable " + v.name + " has lower > upper");
  }
  auto check_terms = [&](const std::vector<LpTerm> &terms, const std::string &where) {
    for (const auto &t : terms) {
      if (t.var >= variables.size()) throw DomainError(where + " references an undeclared variable");
      if (!std::isfinite(t.coeff)) throw DomainError(where + " has a non-finite coefficient");
    }
  };
  check_terms(objective, "objective");
  for (const auto &c : constraints) {
    check_terms(c.row, "constraint " + c.name);
    if (!std::isfinite(c.rhs)) throw DomainError("constraint " + c.name + " has a non-finite rhs");
  }
}

namespace {

constexpr double kZero = 1e-12;
constexpr double kPivotMin = 1e-11;
constexpr double kOptTol = 1e-9;
constexpr std::size_t kIterationLimit = 100000;

// Columns: structural (shifted to lower bound 0), one slack per inequality,
// one artificial per row, then the rhs.
struct Tableau {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> t;
  std::vector<std::size_t> basis;
  std::vector<double> upper;
  std::vector<char> basic;
  std::vector<char> at_upper;

  double &at(std::size_t i, std::size_t j) { return t[i * (n + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return t[i * (n + 1) + j]; }
  double rhs(std::size_t i) const { return at(i, n); }

  std::vector<double> basic_values() const {
    std::vector<double> beta(m);
    for (std::size_t i = 0; i < m; ++i) {
      double v = rhs(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (!basic[j] && at_upper[j]) v -= at(i, j) * upper[j];
      }
      beta[i] = v;
    }
    return beta;
  }

  double reduced_cost(const std::vector<double> &cost, std::size_t j) const {
    double d = cost[j];
    for (std::size_t i = 0; i < m; ++i) d -= cost[basis[i]] * at(i, j);
    return d;
  }

  void pivot(std::size_t r, std::size_t j) {
    const double p = at(r, j);
    if (std::fabs(p) < kPivotMin) throw NumericError("simplex pivot below 1e-11");
    for (std::size_t k = 0; k <= n; ++k) at(r, k) /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      const double f = at(i, j);
      if (f == 0.0) continue;
      for (std::size_t k = 0; k <= n; ++k) at(i, k) -= f * at(r, k);
      at(i, j) = 0.0;
    }
    basic[basis[r]] = 0;
    basis[r] = j;
    basic[j] = 1;
    at_upper[j] = 0;
  }
};

enum class PhaseResult { optimal, unbounded };

PhaseResult run_phase(Tableau &tab, const std::vector<double> &cost, std::size_t &iterations) {
  for (;;) {
    if (++iterations > kIterationLimit) throw NumericError("simplex iteration limit reached");
    std::size_t enter = tab.n;
    for (std::size_t j = 0; j < tab.n; ++j) {
      if (tab.basic[j] || tab.upper[j] == 0.0) continue;
      const double d = tab.reduced_cost(cost, j);
      if ((!tab.at_upper[j] && d < -kOptTol) || (tab.at_upper[j] && d > kOptTol)) {
        enter = j;
        break;
      }
    }
    if (enter == tab.n) return PhaseResult::optimal;

    const double dir = tab.at_upper[enter] ? -1.0 : 1.0;
    const auto beta = tab.basic_values();
    double theta = tab.upper[enter];
    std::size_t leave_row = tab.m;
    std::size_t leave_var = std::isfinite(theta) ? enter : tab.n;
    for (std::size_t i = 0; i < tab.m; ++i) {
      const double alpha = tab.at(i, enter) * dir;
      const std::size_t var = tab.basis[i];
      double limit;
      if (alpha > kZero) {
        limit = std::max(beta[i], 0.0) / alpha;
      } else if (alpha < -kZero && std::isfinite(tab.upper[var])) {
        limit = std::max(tab.upper[var] - beta[i], 0.0) / -alpha;
      } else {
        continue;
      }
      const double tie = 1e-12 * std::max(1.0, std::fabs(theta));
      if (leave_var == tab.n || limit < theta - tie || (limit <= theta + tie && var < leave_var)) {
        theta = limit;
        leave_row = i;
        leave_var = var;
      }
    }
    if (leave_var == tab.n) return PhaseResult::unbounded;

    if (leave_row == tab.m) {
      tab.at_upper[enter] = !tab.at_upper[enter];
      continue;
    }
    const bool leaves_at_upper = tab.at(leave_row, enter) * dir < 0.0;
    const std::size_t leaving = tab.basis[leave_row];
    tab.pivot(leave_row, enter);
    tab.at_upper[leaving] = leaves_at_upper ? 1 : 0;
  }
}

}  // namespace

LpSolution lp_solve(const LinearProgram &lp) {
  lp.validate();
  const std::size_t nv = lp.variables.size();
  const std::size_t m = lp.constraints.size();

  std::vector<double> cost_x(nv, 0.0);
  for (const auto &t : lp.objective) cost_x[t.var] += t.coeff;

  std::size_t slacks = 0;
  for (const auto &c : lp.constraints) slacks += c.relation == Relation::eq ? 0 : 1;

  Tableau tab;
  tab.m = m;
  tab.n = nv + slacks + m;
  tab.t.assign(m * (tab.n + 1), 0.0);
  tab.upper.assign(tab.n, kInf);
  tab.basic.assign(tab.n, 0);
  tab.at_upper.assign(tab.n, 0);
  tab.basis.resize(m);
  for (std::size_t j = 0; j < nv; ++j) tab.upper[j] = lp.variables[j].upper - lp.variables[j].lower;

  std::vector<double> sign(m, 1.0);
  std::size_t slack_col = nv;
  for (std::size_t i = 0; i < m; ++i) {
    const auto &c = lp.constraints[i];
    double rhs = c.rhs;
    for (const auto &t : c.row) {
      tab.at(i, t.var) += t.coeff;
      rhs -= t.coeff * lp.variables[t.var].lower;
    }
    if (c.relation == Relation::le) tab.at(i, slack_col++) = 1.0;
    if (c.relation == Relation::ge) tab.at(i, slack_col++) = -1.0;
    tab.at(i, tab.n) = rhs;
    if (rhs < 0.0) {
      sign[i] = -1.0;
      for (std::size_t k = 0; k <= tab.n; ++k) tab.at(i, k) = -tab.at(i, k);
    }
    const std::size_t art = nv + slacks + i;
    tab.at(i, art) = 1.0;
    tab.basis[i] = art;
    tab.basic[art] = 1;
  }

  LpSolution sol;
  const std::size_t first_art = nv + slacks;
  std::vector<double> cost(tab.n, 0.0);
  for (std::size_t j = first_art; j < tab.n; ++j) cost[j] = 1.0;
  run_phase(tab, cost, sol.iterations);

  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::fabs(tab.rhs(i)));
  {
    const auto beta = tab.basic_values();
    double infeas = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis[i] >= first_art) infeas += beta[i];
    }
    if (infeas > 1e-9 * scale) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < first_art) continue;
    for (std::size_t j = 0; j < first_art; ++j) {
      if (!tab.basic[j] && std::fabs(tab.at(i, j)) > 1e-9) {
        const std::size_t leaving = tab.basis[i];
        tab.pivot(i, j);
        tab.at_upper[leaving] = 0;
        break;
      }
    }
  }
  for (std::size_t j = first_art; j < tab.n; ++j) tab.upper[j] = 0.0;

  std::fill(cost.begin(), cost.end(), 0.0);
  for (std::size_t j = 0; j < nv; ++j) cost[j] = cost_x[j];
  if (run_phase(tab, cost, sol.iterations) == PhaseResult::unbounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }
  sol.status = LpStatus::optimal;

  std::vector<double> shifted(tab.n, 0.0);
  for (std::size_t j = 0; j < tab.n; ++j) {
    if (!tab.basic[j] && tab.at_upper[j]) shifted[j] = tab.upper[j];
  }
  const auto beta = tab.basic_values();
  for (std::size_t i = 0; i < m; ++i) shifted[tab.basis[i]] = beta[i];

  sol.values.resize(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    double v = lp.variables[j].lower + shifted[j];
    v = std::clamp(v, lp.variables[j].lower, lp.variables[j].upper);
    sol.values[j] = v;
    sol.objective += cost_x[j] * v;
  }

  sol.activities.assign(m, 0.0);
  sol.duals.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto &t : lp.constraints[i].row) sol.activities[i] += t.coeff * sol.values[t.var];
    double y = 0.0;
    for (std::size_t k = 0; k < m; ++k) y += cost[tab.basis[k]] * tab.at(k, first_art + i);
    sol.duals[i] = y * sign[i];
  }

  sol.reduced_costs = cost_x;
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto &t : lp.constraints[i].row) sol.reduced_costs[t.var] -= sol.duals[i] * t.coeff;
  }
  sol.dual_objective = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto rel = lp.constraints[i].relation;
    const double y = sol.duals[i];
    sol.dual_objective += y * lp.constraints[i].rhs;
    if (rel == Relation::le) sol.dual_infeasibility = std::max(sol.dual_infeasibility, y);
    if (rel == Relation::ge) sol.dual_infeasibility = std::max(sol.dual_infeasibility, -y);
  }
  for (std::size_t j = 0; j < nv; ++j) {
    const double d = sol.reduced_costs[j];
    if (d >= 0.0) {
      sol.dual_objective += d * lp.variables[j].lower;
    } else if (std::isfinite(lp.variables[j].upper)) {
      sol.dual_objective += d * lp.variables[j].upper;
    } else {
      sol.dual_infeasibility = std::max(sol.dual_infeasibility, -d);
    }
  }
  sol.duality_gap = std::fabs(sol.objective - sol.dual_objective);
  return sol;
}

}  // namespace sdss
