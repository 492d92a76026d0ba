#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdss/lp.h"

namespace sdss {

struct McgpSupplier {
  std::string id;
  double coeff = 0.0;      ///< closeness coefficient C_n
  double unit_cost = 0.0;  ///< U_n
  double lead_time = 0.0;  ///< L_n, days

  friend bool operator==(const McgpSupplier &, const McgpSupplier &) = default;
};

/// Aspiration level with its admissible interval, min <= y <= max.
struct Aspiration {
  double anchor = 0.0;
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const Aspiration &, const Aspiration &) = default;
};

/// Goal weights for d1..d4 and e1, e2; all 1 by default.
struct GoalWeights {
  std::array<double, 4> d{1.0, 1.0, 1.0, 1.0};
  std::array<double, 2> e{1.0, 1.0};

  friend bool operator==(const GoalWeights &, const GoalWeights &) = default;
};

struct McgpModel {
  std::vector<McgpSupplier> suppliers;
  double tvp_floor = 0.0;  ///< T
  Aspiration budget;       ///< y1
  Aspiration lead;         ///< y2
  double quantity = 0.0;   ///< Q
  GoalWeights weights;

  /// Throws DomainError for negative or non-finite data or inverted intervals.
  void validate() const;

  friend bool operator==(const McgpModel &, const McgpModel &) = default;
};

enum class LeadMode { fixed_total, iterative };
const char *to_string(LeadMode m) noexcept;
std::optional<LeadMode> parse_lead_mode(std::string_view s);

/// Variable layout of the built LP.
struct McgpLayout {
  std::size_t n = 0;
  std::size_t x(std::size_t k) const { return k; }
  std::size_t y1() const { return n; }
  std::size_t y2() const { return n + 1; }
  std::size_t d_plus(std::size_t i) const { return n + 2 + 2 * i; }
  std::size_t d_minus(std::size_t i) const { return n + 3 + 2 * i; }
  std::size_t e_plus(std::size_t j) const { return n + 10 + 2 * j; }
  std::size_t e_minus(std::size_t j) const { return n + 11 + 2 * j; }
  std::size_t size() const { return n + 14; }
};

/// Builds the goal program with the lead-time ratio divided by `denominator`.
/// A denominator <= 0 leaves the ratio row without x terms.
LinearProgram build_mcgp(const McgpModel &model, double denominator);

/// fixed_total divides by Q; iterative starts from Q as its first iterate.
LinearProgram build_mcgp(const McgpModel &model, LeadMode mode = LeadMode::fixed_total);

struct Deviations {
  std::array<double, 4> d_plus{};
  std::array<double, 4> d_minus{};
  std::array<double, 2> e_plus{};
  std::array<double, 2> e_minus{};

  friend bool operator==(const Deviations &, const Deviations &) = default;
};

struct Achieved {
  double tvp = 0.0;
  double spend = 0.0;
  double avg_lead_time = 0.0;  ///< sum L x / sum x, 0 when nothing is ordered
  double total_qty = 0.0;

  friend bool operator==(const Achieved &, const Achieved &) = default;
};

Achieved achieved_of(const McgpModel &model, std::span<const double> quantities);

/// Penalty of a fixed plan with every deviation and y chosen optimally.
struct PlanEvaluation {
  double objective = 0.0;
  double y1 = 0.0;
  double y2 = 0.0;
  Deviations deviations;
  Achieved achieved;

  friend bool operator==(const PlanEvaluation &, const PlanEvaluation &) = default;
};

/// Independent of the LP solver. `denominator` plays the same role as in
/// build_mcgp.
PlanEvaluation evaluate_plan(const McgpModel &model, std::span<const double> quantities, double denominator);
PlanEvaluation evaluate_plan(const McgpModel &model, std::span<const double> quantities);

struct AllocationPlan {
  std::vector<std::string> suppliers;
  std::vector<double> quantities;
  double objective = 0.0;
  double y1 = 0.0;
  double y2 = 0.0;
  Achieved achieved;
  Deviations deviations;
  std::string status;  ///< optimal, infeasible, unbounded, not_converged, rounded
  double duality_gap = 0.0;
  double dual_infeasibility = 0.0;

  friend bool operator==(const AllocationPlan &, const AllocationPlan &) = default;
};

struct AllocationOptions {
  LeadMode mode = LeadMode::fixed_total;
  bool integerize = false;
  std::size_t max_iterations = 25;
  double tolerance = 1e-6;
};

struct AllocationResult {
  AllocationPlan plan;
  std::optional<AllocationPlan> integer_plan;
  std::size_t lead_iterations = 0;
  double denominator = 0.0;  ///< lead-time denominator of the final solve

  friend bool operator==(const AllocationResult &, const AllocationResult &) = default;
};

AllocationResult solve_allocation(const McgpModel &model, const AllocationOptions &options = {});

/// Largest-remainder rounding that keeps round(sum x).
std::vector<double> largest_remainder(std::span<const double> quantities);

/// Largest |d+ * d-| or |e+ * e-| of the plan.
double complementarity_violation(const Deviations &dev);

struct SweepPoint {
  double tvp = 0.0;
  AllocationResult result;
};

std::vector<SweepPoint> tvp_sweep(const McgpModel &model, std::span<const double> tvps,
                                  const AllocationOptions &options = {}, bool parallel = true);

/// Inclusive range start, start + step, ... up to stop (with a 1e-9 slack).
std::vector<double> tvp_range(double start, double stop, double step);

/// CSV with header `tvp,supplier,qty,objective`.
std::string tvp_sweep_csv(const std::vector<SweepPoint> &points);

}  // namespace sdss
