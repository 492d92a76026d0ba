#include <random>

#include "doctest.h"
#include "sdss/kernels.h"

using namespace sdss;
using namespace sdss::kernels;

namespace {

std::vector<Tfn> random_shapes(std::mt19937_64 &rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<Tfn> out;
  for (std::size_t i = 0; i < n; ++i) {
    double v[3] = {u(rng), u(rng), u(rng)};
    std::sort(v, v + 3);
    out.push_back({v[0], v[1], v[2]});
  }
  return out;
}

}  // namespace

TEST_CASE("interval membership closed forms") {
  const Tfn t{0, 1, 2};
  CHECK(interval_membership(t, 0, 2) == doctest::Approx(0.5));
  CHECK(interval_membership(t, 0, 1) == doctest::Approx(0.5));
  CHECK(interval_membership(t, 1, 1) == doctest::Approx(1.0));
  CHECK(interval_membership(t, 0.5, 0.5) == doctest::Approx(0.5));
  CHECK(interval_membership(t, 3, 4) == 0.0);
  // Only the part of [p, q] inside the support counts towards the length.
  CHECK(interval_membership(t, -5, 2) == doctest::Approx(0.5));
  CHECK(interval_membership(Tfn{0, 0, 2}, 0, 1) == doctest::Approx(0.75));
}

TEST_CASE("serial and OpenMP kernels agree") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int round = 0; round < 20; ++round) {
    const auto shapes = random_shapes(rng, 1 + round % 9);
    std::vector<Interval> ranges;
    for (int k = 0; k < 50 + round * 7; ++k) {
      const double p = u(rng), q = p + u(rng) / 4;
      ranges.push_back({p, q});
    }
    const auto a = serial::membership_matrix(shapes, ranges);
    const auto b = omp::membership_matrix(shapes, ranges);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    std::vector<double> values(1000 + 50 * round);
    for (auto &v : values) v = u(rng);
    const auto ha = serial::histogram(values, 0.0, 100.0, 3 + round);
    const auto hb = omp::histogram(values, 0.0, 100.0, 3 + round);
    CHECK(ha == hb);
    std::size_t total = 0;
    for (auto c : ha) total += c;
    CHECK(total == values.size());

    const auto &l = shapes.front();
    const Tfn r{l.b, l.c, l.c + 10};
    CHECK(serial::overlap_integral(l, r, l.a, r.c, 2048) ==
          doctest::Approx(omp::overlap_integral(l, r, l.a, r.c, 2048)).epsilon(1e-12));

    const std::size_t rows = 5, cols = 1 + round % 6;
    const auto cells = random_shapes(rng, rows * cols);
    std::vector<double> pis(cols), nis(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      pis[j] = u(rng);
      nis[j] = u(rng);
    }
    for (auto variant : {DistanceVariant::paper, DistanceVariant::per_attribute}) {
      const auto da = serial::ideal_distances(cells, cols, pis, nis, variant);
      const auto db = omp::ideal_distances(cells, cols, pis, nis, variant);
      REQUIRE(da.size() == rows);
      for (std::size_t i = 0; i < rows; ++i) {
        CHECK(da[i].plus == doctest::Approx(db[i].plus).epsilon(1e-12));
        CHECK(da[i].minus == doctest::Approx(db[i].minus).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("distance variants") {
  const std::vector<Tfn> cells{{0, 0, 0}, {3, 3, 3}};
  const std::vector<double> pis{1, 1}, nis{0, 0};
  const auto paper = serial::ideal_distances(cells, 2, pis, nis, DistanceVariant::paper);
  const auto per = serial::ideal_distances(cells, 2, pis, nis, DistanceVariant::per_attribute);
  CHECK(paper[0].plus == doctest::Approx(std::sqrt((3.0 + 12.0) / 3.0)));
  CHECK(per[0].plus == doctest::Approx(1.0 + 2.0));
  CHECK(paper[0].minus == doctest::Approx(3.0));
  CHECK(per[0].minus == doctest::Approx(3.0));
}

TEST_CASE("histogram edges") {
  const std::vector<double> v{0, 1, 2, 3, 4, 5, -1, 6};
  const auto h = serial::histogram(v, 0, 5, 5);
  CHECK(h == std::vector<std::size_t>{1, 1, 1, 1, 2});
}

TEST_CASE("for_each_index rethrows the first failure") {
  std::vector<int> hit(100, 0);
  for_each_index(hit.size(), [&](std::size_t i) { hit[i] = 1; });
  CHECK(std::count(hit.begin(), hit.end(), 1) == 100);
  CHECK_THROWS_AS(for_each_index(10, [](std::size_t i) {
    if (i == 3) throw std::runtime_error("boom");
  }), std::runtime_error);
}
