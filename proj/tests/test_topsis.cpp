#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "sdss/error.h"
#include "sdss/topsis.h"

using namespace sdss;

namespace {

Tfn random_tfn(std::mt19937_64 &rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  double v[3] = {u(rng), u(rng), u(rng)};
  std::sort(v, v + 3);
  return {v[0], v[1], v[2]};
}

DecisionMatrix random_matrix(std::mt19937_64 &rng, std::size_t n, std::size_t m) {
  DecisionMatrix dm;
  for (std::size_t i = 0; i < n; ++i) dm.suppliers.push_back("S" + std::to_string(i + 1));
  for (std::size_t j = 0; j < m; ++j) {
    Attribute a;
    a.id = "C" + std::to_string(j + 1);
    a.objective = j % 3 == 1 ? Objective::min : Objective::max;
    a.group = j % 2 == 0 ? Group::resilience : Group::cost;
    dm.attributes.push_back(a);
    dm.weights.push_back(random_tfn(rng, 0.05, 1.0));
  }
  for (std::size_t k = 0; k < n * m; ++k) dm.cells.push_back(random_tfn(rng, 1.0, 50.0));
  return dm;
}

DecisionMatrix one_column(std::vector<Tfn> cells, Objective obj, Tfn weight = {1, 1, 1}) {
  DecisionMatrix dm;
  for (std::size_t i = 0; i < cells.size(); ++i) dm.suppliers.push_back("S" + std::to_string(i + 1));
  dm.attributes.push_back({"C1", "", EvidenceKind::linguistic, obj, Group::resilience});
  dm.weights.push_back(weight);
  dm.cells = std::move(cells);
  return dm;
}

}  // namespace

TEST_CASE("benefit and cost normalization") {
  const auto b = normalize(one_column({{2, 4, 5}, {1, 2, 10}}, Objective::max));
  CHECK(b.cell(0, 0) == Tfn{0.2, 0.4, 0.5});
  CHECK(b.cell(1, 0) == Tfn{0.1, 0.2, 1.0});

  const auto c = normalize(one_column({{2, 4, 5}, {1, 2, 10}}, Objective::min));
  CHECK(c.cell(0, 0).a == doctest::Approx(0.2));
  CHECK(c.cell(0, 0).b == doctest::Approx(0.25));
  CHECK(c.cell(0, 0).c == doctest::Approx(0.5));
  CHECK(c.cell(1, 0) == Tfn{0.1, 0.5, 1.0});

  CHECK_THROWS_AS(normalize(one_column({{0, 1, 2}, {1, 2, 3}}, Objective::min)), DomainError);
  CHECK_THROWS_AS(normalize(one_column({{0, 0, 0}, {0, 0, 0}}, Objective::max)), DomainError);
}

TEST_CASE("matrix validation") {
  auto dm = one_column({{1, 2, 3}}, Objective::max);
  dm.weights[0] = {0.5, 0.6, 1.2};
  CHECK_THROWS_AS(dm.validate(), DomainError);
  dm.weights.clear();
  CHECK_THROWS_AS(dm.validate(), DomainError);
  DecisionMatrix empty;
  CHECK_THROWS_AS(empty.validate(), DomainError);
}

TEST_CASE("PIS is the weight upper bound on every column") {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 30; ++round) {
    const auto dm = random_matrix(rng, 2 + round % 6, 1 + round % 9);
    const auto w = apply_weights(normalize(dm));
    const auto ideal = ideal_solutions(w);
    for (std::size_t j = 0; j < dm.cols(); ++j) {
      CHECK(ideal.pis[j].c == doctest::Approx(dm.weights[j].c));
      CHECK(ideal.nis[j].a >= 0);
      CHECK(ideal.nis[j].a <= ideal.pis[j].c);
    }
  }
}

TEST_CASE("closeness bounds and anchors") {
  std::mt19937_64 rng(17);
  for (auto variant : {DistanceVariant::paper, DistanceVariant::per_attribute}) {
    for (int round = 0; round < 20; ++round) {
      const auto dm = random_matrix(rng, 4, 6);
      const auto r = rank(dm, variant);
      for (const auto &s : r.scores) {
        CHECK(s.closeness >= 0);
        CHECK(s.closeness <= 1);
      }
      auto w = apply_weights(normalize(dm));
      const auto ideal = ideal_solutions(w);
      for (std::size_t j = 0; j < w.cols(); ++j) {
        w.cell(0, j) = ideal.pis[j];
        w.cell(1, j) = ideal.nis[j];
      }
      const auto anchored = closeness(w, ideal, variant);
      CHECK(anchored.scores[0].closeness == doctest::Approx(1.0));
      CHECK(anchored.scores[1].closeness == doctest::Approx(0.0));
      CHECK(anchored.scores[0].rank == 1);
    }
  }
}

TEST_CASE("improving a benefit cell keeps the anchors and helps the supplier") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 30; ++round) {
    auto dm = random_matrix(rng, 5, 4);
    for (auto &a : dm.attributes) a.objective = Objective::max;
    const auto before = rank(dm);
    // raise S2 on C1 without touching the column maximum
    double top = 0;
    for (std::size_t i = 0; i < dm.rows(); ++i) top = std::max(top, dm.cell(i, 0).c);
    auto &cell = dm.cell(1, 0);
    const double room = top - cell.c;
    if (room <= 0) continue;
    double floor_a = 1e18;
    for (std::size_t i = 0; i < dm.rows(); ++i)
      if (i != 1) floor_a = std::min(floor_a, dm.cell(i, 0).a);
    if (cell.a < floor_a) continue;  // S2 anchors the NIS; lifting it would move the anchor
    cell = Tfn{cell.a + room / 2, cell.b + room / 2, cell.c + room / 2};
    const auto after = rank(dm);
    CHECK(after.scores[1].closeness >= before.scores[1].closeness - 1e-12);
    for (std::size_t i = 0; i < dm.rows(); ++i) {
      if (i == 1) continue;
      CHECK(after.scores[i].closeness == doctest::Approx(before.scores[i].closeness));
    }
  }
}

TEST_CASE("single supplier is degenerate") {
  const auto r = rank(one_column({{1, 2, 3}}, Objective::max));
  REQUIRE(r.scores.size() == 1);
  CHECK(r.scores[0].closeness == 0.5);
  CHECK(r.scores[0].rank == 1);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("ties rank in input order") {
  const auto r = rank(one_column({{1, 2, 3}, {4, 5, 6}, {1, 2, 3}}, Objective::max));
  CHECK(r.scores[1].rank == 1);
  CHECK(r.scores[0].rank == 2);
  CHECK(r.scores[2].rank == 3);
  CHECK(r.order() == std::vector<std::string>{"S2", "S1", "S3"});
}

TEST_CASE("scri") {
  std::mt19937_64 rng(31);
  const auto dm = random_matrix(rng, 6, 8);
  const auto in = scri_inputs(dm);
  CHECK(std::accumulate(in.resilience.begin(), in.resilience.end(), 0.0) == doctest::Approx(1.0));
  CHECK(std::accumulate(in.cost.begin(), in.cost.end(), 0.0) == doctest::Approx(1.0));

  for (double alpha : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    const auto s = scri(in, alpha);
    CHECK(std::accumulate(s.begin(), s.end(), 0.0) == doctest::Approx(1.0));
    for (std::size_t i = 0; i < s.size(); ++i)
      CHECK(s[i] == doctest::Approx(alpha * in.resilience[i] + (1 - alpha) * in.cost[i]));
  }
  CHECK(scri(in, 1.0) == in.resilience);
  CHECK(scri(in, 0.0) == in.cost);
  CHECK(in.resilience == rank(restrict_to(dm, GroupFilter::resilience)).normalized_closeness());
  CHECK_THROWS_AS(scri(in, -0.1), DomainError);
  CHECK_THROWS_AS(scri(in, 1.1), DomainError);

  const auto rows = scri_sweep(in, 0.1);
  REQUIRE(rows.size() == 9);
  CHECK(rows.front().alpha == doctest::Approx(0.1));
  CHECK(rows.back().alpha == doctest::Approx(0.9));
  for (const auto &row : rows) {
    CHECK(row.values == scri_row(in, row.alpha).values);
    CHECK(row.values[row.argmax] == *std::max_element(row.values.begin(), row.values.end()));
  }
  CHECK(scri_sweep(in, 0.5).size() == 1);
  CHECK_THROWS_AS(scri_sweep(in, 0.0), DomainError);
  CHECK_THROWS_AS(scri_sweep(in, 0.6), DomainError);

  auto only_res = restrict_to(dm, GroupFilter::resilience);
  CHECK_THROWS_AS(scri_inputs(only_res), DomainError);

  const auto csv = scri_csv(in, rows);
  CHECK(csv.rfind("alpha,supplier,scri,is_argmax\n", 0) == 0);
}
