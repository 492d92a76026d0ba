#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace sdss {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { le, eq, ge };
enum class LpStatus { optimal, infeasible, unbounded };

const char *to_string(Relation r) noexcept;
const char *to_string(LpStatus s) noexcept;

struct LpTerm {
  std::size_t var = 0;
  double coeff = 0.0;
};

struct LpVariable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
};

struct LpConstraint {
  std::string name;
  std::vector<LpTerm> row;
  Relation relation = Relation::le;
  double rhs = 0.0;
};

/// Minimize objective . x subject to the constraints and variable bounds.
struct LinearProgram {
  std::vector<LpVariable> variables;
  std::vector<LpTerm> objective;
  std::vector<LpConstraint> constraints;

  std::size_t add_variable(std::string name, double lower = 0.0, double upper = kInf);
  void add_constraint(std::string name, std::vector<LpTerm> row, Relation rel, double rhs);
  void set_cost(std::size_t var, double coeff);

  /// Throws DomainError for non-finite data, lower > upper, an infinite lower
  /// bound or a term naming an undeclared variable.
  void validate() const;
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> values;
  std::vector<double> activities;     ///< row . x per constraint
  std::vector<double> duals;          ///< one per constraint, sign as in the original rows
  std::vector<double> reduced_costs;  ///< c_j - duals . A_j
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  double dual_infeasibility = 0.0;  ///< largest sign violation among duals and reduced costs
  std::size_t iterations = 0;
};

/// Two-phase bounded-variable primal simplex on a dense tableau with Bland's
/// rule. Infeasible and unbounded are reported as statuses; a pivot smaller
/// than 1e-11 throws NumericError.
LpSolution lp_solve(const LinearProgram &lp);

}  // namespace sdss
