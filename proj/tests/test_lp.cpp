#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "sdss/error.h"
#include "sdss/lp.h"
#include "support/lp_oracle.h"

using namespace sdss;

namespace {

LinearProgram random_lp(std::mt19937_64 &rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> coef(-5, 5), bound(1, 10), cost(-3, 3);
  std::uniform_int_distribution<int> rel(0, 2);
  LinearProgram lp;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = j % 2 == 0 ? 0.0 : -bound(rng) / 2;
    lp.add_variable("x" + std::to_string(j), lo, lo + bound(rng));
    lp.set_cost(j, std::round(cost(rng) * 4) / 4);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<LpTerm> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back({j, std::round(coef(rng) * 2) / 2});
    const auto r = static_cast<Relation>(rel(rng));
    // rare equalities keep most programs feasible
    const auto relation = r == Relation::eq && i % 3 != 0 ? Relation::le : r;
    lp.add_constraint("r" + std::to_string(i), row, relation, std::round(coef(rng) * 3));
  }
  return lp;
}

double row_value(const LinearProgram &lp, const LpConstraint &c, const std::vector<double> &x) {
  (void)lp;
  double s = 0;
  for (const auto &t : c.row) s += t.coeff * x[t.var];
  return s;
}

}  // namespace

TEST_CASE("small textbook program") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18
  LinearProgram lp;
  const auto x = lp.add_variable("x");
  const auto y = lp.add_variable("y");
  lp.set_cost(x, -3);
  lp.set_cost(y, -5);
  lp.add_constraint("a", {{x, 1}}, Relation::le, 4);
  lp.add_constraint("b", {{y, 2}}, Relation::le, 12);
  lp.add_constraint("c", {{x, 3}, {y, 2}}, Relation::le, 18);
  const auto s = lp_solve(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(-36));
  CHECK(s.values[x] == doctest::Approx(2));
  CHECK(s.values[y] == doctest::Approx(6));
  CHECK(s.duality_gap <= 1e-9);
  CHECK(s.duals[0] == doctest::Approx(0));
  CHECK(s.duals[1] == doctest::Approx(-1.5));
  CHECK(s.duals[2] == doctest::Approx(-1));
}

TEST_CASE("infeasible and unbounded") {
  LinearProgram inf;
  const auto x = inf.add_variable("x", 0, 5);
  inf.add_constraint("r", {{x, 1}}, Relation::ge, 6);
  CHECK(lp_solve(inf).status == LpStatus::infeasible);

  LinearProgram unb;
  const auto u = unb.add_variable("u");
  const auto v = unb.add_variable("v");
  unb.set_cost(u, -1);
  unb.add_constraint("r", {{u, 1}, {v, -1}}, Relation::le, 1);
  CHECK(lp_solve(unb).status == LpStatus::unbounded);
}

TEST_CASE("validation") {
  LinearProgram lp;
  lp.add_variable("x", 2, 1);
  CHECK_THROWS_AS(lp.validate(), DomainError);
  LinearProgram lp2;
  lp2.add_variable("x", -kInf, 1);
  CHECK_THROWS_AS(lp2.validate(), DomainError);
  LinearProgram lp3;
  lp3.add_variable("x");
  lp3.add_constraint("r", {{3, 1.0}}, Relation::le, 1);
  CHECK_THROWS_AS(lp3.validate(), DomainError);
  LinearProgram lp4;
  lp4.add_variable("x");
  lp4.add_constraint("r", {{0, NAN}}, Relation::le, 1);
  CHECK_THROWS_AS(lp4.validate(), DomainError);
}

TEST_CASE("fixed variable and equality rows") {
  LinearProgram lp;
  const auto x = lp.add_variable("x", 3, 3);
  const auto y = lp.add_variable("y", 0, 10);
  lp.set_cost(y, 1);
  lp.add_constraint("sum", {{x, 1}, {y, 1}}, Relation::eq, 7);
  const auto s = lp_solve(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.values[x] == doctest::Approx(3));
  CHECK(s.values[y] == doctest::Approx(4));
  CHECK(s.objective == doctest::Approx(4));
}

TEST_CASE("random programs agree with vertex enumeration") {
  std::mt19937_64 rng(4242);
  int optimal = 0;
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 2 + round % 3;
    const std::size_t m = 1 + round % 4;
    const auto lp = random_lp(rng, n, m);
    const auto s = lp_solve(lp);
    const auto o = oracle::vertex_optimum(lp, 1e-9);
    INFO("round " << round);
    if (!o.feasible) {
      CHECK(s.status == LpStatus::infeasible);
      continue;
    }
    REQUIRE(s.status == LpStatus::optimal);
    ++optimal;
    CHECK(s.objective == doctest::Approx(o.objective).epsilon(1e-7));

    // primal feasibility
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(s.values[j] >= lp.variables[j].lower - 1e-9);
      CHECK(s.values[j] <= lp.variables[j].upper + 1e-9);
    }
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
      const auto &c = lp.constraints[i];
      const double v = row_value(lp, c, s.values);
      CHECK(s.activities[i] == doctest::Approx(v));
      if (c.relation == Relation::le) CHECK(v <= c.rhs + 1e-9);
      if (c.relation == Relation::ge) CHECK(v >= c.rhs - 1e-9);
      if (c.relation == Relation::eq) CHECK(v == doctest::Approx(c.rhs));
    }
    // dual certificate
    CHECK(s.duality_gap <= 1e-6);
    CHECK(s.dual_infeasibility <= 1e-7);
    CHECK(s.dual_objective == doctest::Approx(s.objective).epsilon(1e-7));
  }
  CHECK(optimal >= 20);
}

TEST_CASE("degenerate program terminates") {
  // classic cycling example for the largest-coefficient rule
  LinearProgram lp;
  for (int j = 0; j < 4; ++j) lp.add_variable("x" + std::to_string(j), 0, 100);
  lp.set_cost(0, -0.75);
  lp.set_cost(1, 150);
  lp.set_cost(2, -0.02);
  lp.set_cost(3, 6);
  lp.add_constraint("a", {{0, 0.25}, {1, -60}, {2, -0.04}, {3, 9}}, Relation::le, 0);
  lp.add_constraint("b", {{0, 0.5}, {1, -90}, {2, -0.02}, {3, 3}}, Relation::le, 0);
  lp.add_constraint("c", {{2, 1}}, Relation::le, 1);
  const auto s = lp_solve(lp);
  REQUIRE(s.status == LpStatus::optimal);
  const auto o = oracle::vertex_optimum(lp, 1e-9);
  CHECK(s.objective == doctest::Approx(o.objective));
}
