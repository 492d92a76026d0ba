#include "sdss/mcgp.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "sdss/error.h"
#include "sdss/kernels.h"

namespace sdss {

const char *to_string(LeadMode m) noexcept { return m == LeadMode::iterative ? "iterative" : "fixed_total"; }

std::optional<LeadMode> parse_lead_mode(std::string_view s) {
  if (s == "fixed_total") return LeadMode::fixed_total;
  if (s == "iterative") return LeadMode::iterative;
  return std::nullopt;
}

void McgpModel::validate() const {
  auto nonneg = [](double v, const std::string &what) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError(what + " must be finite and nonnegative");
  };
  if (suppliers.empty()) throw DomainError("MCGP model has no suppliers");
  for (const auto &s : suppliers) {
    nonneg(s.coeff, "coefficient of " + s.id);
    nonneg(s.unit_cost, "unit cost of " + s.id);
    nonneg(s.lead_time, "lead time of " + s.id);
  }
  nonneg(tvp_floor, "TVP floor");
  nonneg(quantity, "procurement level");
  for (const auto *a : {&budget, &lead}) {
    const std::string what = a == &budget ? "budget" : "lead time";
    nonneg(a->anchor, what + " anchor");
    nonneg(a->min, what + " minimum");
    nonneg(a->max, what + " maximum");
    if (a->min > a->max) throw DomainError(what + " interval has min > max");
  }
  for (double w : weights.d) nonneg(w, "goal weight");
  for (double w : weights.e) nonneg(w, "goal weight");
}

LinearProgram build_mcgp(const McgpModel &model, double denominator) {
  model.validate();
  const McgpLayout at{model.suppliers.size()};
  LinearProgram lp;
  for (const auto &s : model.suppliers) lp.add_variable("x_" + s.id);
  lp.add_variable("y1", model.budget.min, model.budget.max);
  lp.add_variable("y2", model.lead.min, model.lead.max);
  for (int i = 1; i <= 4; ++i) {
    lp.add_variable("d" + std::to_string(i) + "+");
    lp.add_variable("d" + std::to_string(i) + "-");
  }
  for (int j = 1; j <= 2; ++j) {
    lp.add_variable("e" + std::to_string(j) + "+");
    lp.add_variable("e" + std::to_string(j) + "-");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    lp.set_cost(at.d_plus(i), model.weights.d[i]);
    lp.set_cost(at.d_minus(i), model.weights.d[i]);
  }
  for (std::size_t j = 0; j < 2; ++j) {
    lp.set_cost(at.e_plus(j), model.weights.e[j]);
    lp.set_cost(at.e_minus(j), model.weights.e[j]);
  }

  auto supplier_row = [&](auto coeff_of) {
    std::vector<LpTerm> row;
    for (std::size_t k = 0; k < at.n; ++k) row.push_back({at.x(k), coeff_of(model.suppliers[k])});
    return row;
  };
  auto with_dev = [&](std::vector<LpTerm> row, std::size_t plus, std::size_t minus) {
    row.push_back({plus, -1.0});
    row.push_back({minus, 1.0});
    return row;
  };

  lp.add_constraint("tvp", with_dev(supplier_row([](const McgpSupplier &s) { return s.coeff; }), at.d_plus(0), at.d_minus(0)),
                    Relation::ge, model.tvp_floor);
  auto budget = with_dev(supplier_row([](const McgpSupplier &s) { return s.unit_cost; }), at.d_plus(1), at.d_minus(1));
  budget.push_back({at.y1(), -1.0});
  lp.add_constraint("budget", std::move(budget), Relation::eq, 0.0);
  lp.add_constraint("budget_anchor", with_dev({{at.y1(), 1.0}}, at.e_plus(0), at.e_minus(0)), Relation::eq,
                    model.budget.anchor);
  std::vector<LpTerm> lead_row;
  if (denominator > 0.0) {
    lead_row = supplier_row([&](const McgpSupplier &s) { return s.lead_time / denominator; });
  }
  lead_row = with_dev(std::move(lead_row), at.d_plus(2), at.d_minus(2));
  lead_row.push_back({at.y2(), -1.0});
  lp.add_constraint("lead", std::move(lead_row), Relation::eq, 0.0);
  lp.add_constraint("lead_anchor", with_dev({{at.y2(), 1.0}}, at.e_plus(1), at.e_minus(1)), Relation::eq,
                    model.lead.anchor);
  lp.add_constraint("quantity", with_dev(supplier_row([](const McgpSupplier &) { return 1.0; }), at.d_plus(3), at.d_minus(3)),
                    Relation::le, model.quantity);
  return lp;
}

LinearProgram build_mcgp(const McgpModel &model, LeadMode) { return build_mcgp(model, model.quantity); }

Achieved achieved_of(const McgpModel &model, std::span<const double> quantities) {
  if (quantities.size() != model.suppliers.size()) throw DomainError("one quantity per supplier is required");
  Achieved a;
  double lead_sum = 0.0;
  for (std::size_t k = 0; k < quantities.size(); ++k) {
    const auto &s = model.suppliers[k];
    a.tvp += s.coeff * quantities[k];
    a.spend += s.unit_cost * quantities[k];
    lead_sum += s.lead_time * quantities[k];
    a.total_qty += quantities[k];
  }
  a.avg_lead_time = a.total_qty > 0.0 ? lead_sum / a.total_qty : 0.0;
  return a;
}

namespace {

struct GoalChoice {
  double y = 0.0;
  double plus = 0.0, minus = 0.0;    // value - y
  double e_plus = 0.0, e_minus = 0.0;  // y - anchor
  double penalty = 0.0;
};

// Minimizes w_d |value - y| + w_e |y - anchor| over y in [lo, hi]; the
// function is piecewise linear, so a breakpoint or an end point is optimal.
GoalChoice choose_goal(double value, const Aspiration &asp, double w_d, double w_e) {
  const double candidates[] = {std::clamp(value, asp.min, asp.max), std::clamp(asp.anchor, asp.min, asp.max), asp.min,
                               asp.max};
  GoalChoice best;
  bool first = true;
  for (double y : candidates) {
    GoalChoice g;
    g.y = y;
    g.plus = std::max(value - y, 0.0);
    g.minus = std::max(y - value, 0.0);
    g.e_plus = std::max(y - asp.anchor, 0.0);
    g.e_minus = std::max(asp.anchor - y, 0.0);
    g.penalty = w_d * (g.plus + g.minus) + w_e * (g.e_plus + g.e_minus);
    if (first || g.penalty < best.penalty) {
      best = g;
      first = false;
    }
  }
  return best;
}

}  // namespace

PlanEvaluation evaluate_plan(const McgpModel &model, std::span<const double> quantities, double denominator) {
  model.validate();
  PlanEvaluation ev;
  ev.achieved = achieved_of(model, quantities);
  for (double q : quantities) {
    if (!std::isfinite(q) || q < 0.0) throw DomainError("plan quantities must be finite and nonnegative");
  }
  const auto &w = model.weights;
  auto &dev = ev.deviations;
  dev.d_minus[0] = std::max(model.tvp_floor - ev.achieved.tvp, 0.0);

  const auto budget = choose_goal(ev.achieved.spend, model.budget, w.d[1], w.e[0]);
  ev.y1 = budget.y;
  dev.d_plus[1] = budget.plus;
  dev.d_minus[1] = budget.minus;
  dev.e_plus[0] = budget.e_plus;
  dev.e_minus[0] = budget.e_minus;

  double ratio = 0.0;
  if (denominator > 0.0) {
    for (std::size_t k = 0; k < quantities.size(); ++k) ratio += model.suppliers[k].lead_time * quantities[k];
    ratio /= denominator;
  }
  const auto lead = choose_goal(ratio, model.lead, w.d[2], w.e[1]);
  ev.y2 = lead.y;
  dev.d_plus[2] = lead.plus;
  dev.d_minus[2] = lead.minus;
  dev.e_plus[1] = lead.e_plus;
  dev.e_minus[1] = lead.e_minus;

  dev.d_plus[3] = std::max(ev.achieved.total_qty - model.quantity, 0.0);

  for (std::size_t i = 0; i < 4; ++i) ev.objective += w.d[i] * (dev.d_plus[i] + dev.d_minus[i]);
  for (std::size_t j = 0; j < 2; ++j) ev.objective += w.e[j] * (dev.e_plus[j] + dev.e_minus[j]);
  return ev;
}

PlanEvaluation evaluate_plan(const McgpModel &model, std::span<const double> quantities) {
  return evaluate_plan(model, quantities, model.quantity);
}

double complementarity_violation(const Deviations &dev) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::fabs(dev.d_plus[i] * dev.d_minus[i]));
  for (std::size_t j = 0; j < 2; ++j) worst = std::max(worst, std::fabs(dev.e_plus[j] * dev.e_minus[j]));
  return worst;
}

std::vector<double> largest_remainder(std::span<const double> quantities) {
  std::vector<double> out(quantities.size());
  std::vector<double> frac(quantities.size());
  double total = 0.0, floors = 0.0;
  for (std::size_t k = 0; k < quantities.size(); ++k) {
    const double q = std::max(quantities[k], 0.0);
    total += q;
    out[k] = std::floor(q);
    frac[k] = q - out[k];
    floors += out[k];
  }
  auto remaining = static_cast<long long>(std::llround(total) - std::llround(floors));
  std::vector<std::size_t> idx(quantities.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (std::size_t r = 0; r < idx.size() && remaining > 0; ++r, --remaining) out[idx[r]] += 1.0;
  return out;
}

namespace {

AllocationPlan plan_from_evaluation(const McgpModel &model, std::vector<double> quantities, const PlanEvaluation &ev,
                                    std::string status) {
  AllocationPlan plan;
  for (const auto &s : model.suppliers) plan.suppliers.push_back(s.id);
  plan.quantities = std::move(quantities);
  plan.objective = ev.objective;
  plan.y1 = ev.y1;
  plan.y2 = ev.y2;
  plan.achieved = ev.achieved;
  plan.deviations = ev.deviations;
  plan.status = std::move(status);
  return plan;
}

AllocationPlan plan_from_solution(const McgpModel &model, const LpSolution &sol) {
  AllocationPlan plan;
  for (const auto &s : model.suppliers) plan.suppliers.push_back(s.id);
  plan.status = to_string(sol.status);
  if (sol.status != LpStatus::optimal) return plan;
  const McgpLayout at{model.suppliers.size()};
  for (std::size_t k = 0; k < at.n; ++k) plan.quantities.push_back(std::max(sol.values[at.x(k)], 0.0));
  plan.objective = sol.objective;
  plan.y1 = sol.values[at.y1()];
  plan.y2 = sol.values[at.y2()];
  for (std::size_t i = 0; i < 4; ++i) {
    plan.deviations.d_plus[i] = sol.values[at.d_plus(i)];
    plan.deviations.d_minus[i] = sol.values[at.d_minus(i)];
  }
  for (std::size_t j = 0; j < 2; ++j) {
    plan.deviations.e_plus[j] = sol.values[at.e_plus(j)];
    plan.deviations.e_minus[j] = sol.values[at.e_minus(j)];
  }
  plan.achieved = achieved_of(model, plan.quantities);
  plan.duality_gap = sol.duality_gap;
  plan.dual_infeasibility = sol.dual_infeasibility;
  return plan;
}

}  // namespace

AllocationResult solve_allocation(const McgpModel &model, const AllocationOptions &options) {
  AllocationResult result;
  double denominator = model.quantity;
  LpSolution sol;
  for (;;) {
    sol = lp_solve(build_mcgp(model, denominator));
    ++result.lead_iterations;
    result.denominator = denominator;
    result.plan = plan_from_solution(model, sol);
    if (sol.status != LpStatus::optimal || options.mode == LeadMode::fixed_total) break;
    const double total = result.plan.achieved.total_qty;
    if (std::fabs(total - denominator) <= options.tolerance) break;
    if (result.lead_iterations >= options.max_iterations) {
      result.plan.status = "not_converged";
      break;
    }
    denominator = total;
  }
  if (options.integerize && sol.status == LpStatus::optimal) {
    auto rounded = largest_remainder(result.plan.quantities);
    const double denom = options.mode == LeadMode::fixed_total
                             ? model.quantity
                             : std::accumulate(rounded.begin(), rounded.end(), 0.0);
    const auto ev = evaluate_plan(model, rounded, denom);
    result.integer_plan = plan_from_evaluation(model, std::move(rounded), ev, "rounded");
  }
  return result;
}

std::vector<SweepPoint> tvp_sweep(const McgpModel &model, std::span<const double> tvps,
                                  const AllocationOptions &options, bool parallel) {
  if (tvps.empty()) throw DomainError("TVP sweep needs at least one value");
  model.validate();
  std::vector<SweepPoint> out(tvps.size());
  kernels::for_each_index(
      tvps.size(),
      [&](std::size_t k) {
        McgpModel local = model;
        local.tvp_floor = tvps[k];
        out[k] = SweepPoint{tvps[k], solve_allocation(local, options)};
      },
      parallel);
  return out;
}

std::vector<double> tvp_range(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || stop < start) {
    throw DomainError("TVP range needs start <= stop and a positive step");
  }
  std::vector<double> out;
  for (long long k = 0;; ++k) {
    const double v = start + static_cast<double>(k) * step;
    if (v > stop + 1e-9) break;
    out.push_back(v);
  }
  return out;
}

std::string tvp_sweep_csv(const std::vector<SweepPoint> &points) {
  std::string out = "tvp,supplier,qty,objective\n";
  char buf[200];
  for (const auto &p : points) {
    const auto &plan = p.result.plan;
    for (std::size_t k = 0; k < plan.quantities.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.12g,%s,%.12g,%.12g\n", p.tvp, plan.suppliers[k].c_str(), plan.quantities[k],
                    plan.objective);
      out += buf;
    }
  }
  return out;
}

}  // namespace sdss
