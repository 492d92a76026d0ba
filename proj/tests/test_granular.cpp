#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "sdss/error.h"
#include "sdss/granular.h"

using namespace sdss;

namespace {

RangeSet random_ranges(std::mt19937_64 &rng, double lo, double hi, int count) {
  std::uniform_real_distribution<double> u(lo, hi);
  RangeSet out;
  for (int i = 0; i < count; ++i) {
    double p = u(rng), q = u(rng);
    if (p > q) std::swap(p, q);
    out.ranges.push_back({p, q});
  }
  return out;
}

ReliabilityReport with_rstar(double r) {
  ReliabilityReport rep;
  rep.normalized = r;
  return rep;
}

}  // namespace

TEST_CASE("range membership") {
  const auto f = fuzzify_frame(0, 14, 7);
  const auto &c3 = f.at(3).shape;
  CHECK(range_membership(f, 3, {c3.a, c3.c}) == doctest::Approx(0.5));
  CHECK(range_membership(f, 3, {c3.b, c3.b}) == doctest::Approx(1.0));
  CHECK(range_membership(f, 3, {0.0, c3.a - 0.1}) == 0.0);
  CHECK(range_membership(f, 3, {c3.c, c3.c}) == 0.0);
  // half the support, rising side: mean of a linear ramp
  CHECK(range_membership(f, 3, {c3.a, c3.b}) == doctest::Approx(0.5));
  // a range wider than the class only counts the part inside the support
  CHECK(range_membership(f, 3, {-10, 30}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(range_membership(f, 3, {2, 1}), DomainError);
  for (int k = 0; k < 7; ++k) {
    const double v = range_membership(f, k, {3.3, 9.1});
    CHECK(v >= 0);
    CHECK(v <= 1);
  }
}

TEST_CASE("static reliability") {
  SUBCASE("gap partition") {
    std::vector<FrameClass> cls{{"A", {0, 1, 2}}, {"B", {3, 4, 5}}, {"C", {6, 7, 8}}};
    const auto f = Frame::from_classes(0, 8, cls);
    CHECK(static_reliability(f) == doctest::Approx(2.0));
  }
  SUBCASE("identical classes") {
    const std::vector<Tfn> same{{0, 1, 2}, {0, 1, 2}};
    CHECK(static_reliability(same) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(class_similarity({0, 1, 2}, {0, 1, 2}) == doctest::Approx(1.0));
  }
  SUBCASE("congruent interior pairs") {
    const auto f = fuzzify_frame(0, 14, 7);
    const auto shapes = f.shapes();
    const double sim0 = class_similarity(shapes[1], shapes[2]);
    for (std::size_t k = 2; k + 2 < shapes.size(); ++k)
      CHECK(class_similarity(shapes[k], shapes[k + 1]) == doctest::Approx(sim0).epsilon(1e-9));
    // interior triangles overlapping by half their base
    CHECK(sim0 == doctest::Approx(1.0 / 7.0).epsilon(1e-4));
    double expected = 0;
    for (std::size_t k = 0; k + 1 < shapes.size(); ++k) expected += 1 - class_similarity(shapes[k], shapes[k + 1]);
    CHECK(static_reliability(f) == doctest::Approx(expected));
    CHECK(static_reliability(f) > 0);
  }
}

TEST_CASE("dynamic reliability") {
  const auto f2 = fuzzify_frame(0, 1, 2);
  REQUIRE(f2.crossings().size() == 1);
  CHECK(f2.crossings()[0] == doctest::Approx(0.5));
  CHECK(dynamic_reliability(f2, std::vector<double>{0.5}) == doctest::Approx(1.0));

  const auto f7 = fuzzify_frame(0, 14, 7);
  const auto cross = f7.crossings();
  REQUIRE(cross.size() == 6);
  double sum = 0;
  for (double p : cross) sum += std::abs(7 - p) / 14;
  CHECK(dynamic_reliability(f7, std::vector<double>{7}) == doctest::Approx(std::exp(sum)));
  // interior crossings are interior knots
  for (std::size_t k = 1; k + 1 < cross.size(); ++k) CHECK(cross[k] == doctest::Approx(2.0 * (k + 1)));

  // a sample outside the frame is ignored
  CHECK(dynamic_reliability(f7, std::vector<double>{7, 100}) == doctest::Approx(std::exp(sum)));
  CHECK_THROWS_AS(dynamic_reliability(f7, std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(dynamic_reliability(f7, std::vector<double>{-1}), DomainError);
}

TEST_CASE("reliability reports") {
  const std::vector<Frame> frames{fuzzify_frame(0, 14, 7), fuzzify_frame(58, 158, 7)};
  const std::vector<std::vector<double>> samples{{3.0}, {120.0}};
  const auto reps = reliability_reports(frames, samples);
  REQUIRE(reps.size() == 2);
  double top = 0;
  for (const auto &r : reps) {
    CHECK(r.comprehensive == doctest::Approx(r.static_index * r.dynamic_index));
    CHECK(r.normalized > 0);
    CHECK(r.normalized <= 1);
    top = std::max(top, r.normalized);
  }
  CHECK(top == 1.0);

  const std::vector<Range> ranges{{1, 3}, {5, 9}};
  const auto mid = reliability_samples(frames[0], ranges, {});
  REQUIRE(mid.size() == 1);
  CHECK(mid[0] == doctest::Approx(4.5));
  const ReliabilityConfig seeded{SampleMode::seeded_uniform, 5, 42};
  const auto s1 = reliability_samples(frames[0], ranges, seeded);
  CHECK(s1.size() == 5);
  CHECK(s1 == reliability_samples(frames[0], ranges, seeded));
  for (double v : s1) {
    CHECK(v >= 0);
    CHECK(v <= 14);
  }
}

TEST_CASE("reliability modify") {
  const MembershipRow row{{0.2, 0.8, 0.0}, MembershipStage::raw};
  const auto half = reliability_modify(row, 0.5);
  CHECK(half.stage == MembershipStage::reliability_modified);
  CHECK(half.per_class[0] == doctest::Approx(0.1));
  CHECK(half.per_class[1] == doctest::Approx(0.4));
  CHECK(half.per_class[2] == 0.0);
  CHECK(reliability_modify(row, 1.0).per_class == row.per_class);
  CHECK_THROWS_AS(reliability_modify(row, 0.0), DomainError);
  CHECK_THROWS_AS(reliability_modify(row, 1.5), DomainError);
}

TEST_CASE("aggregate and normalize") {
  const std::vector<MembershipRow> one{{{0.5, 0.5, 0}, MembershipStage::raw}};
  const auto n1 = aggregate_and_normalize(one);
  CHECK(n1.stage == MembershipStage::normalized);
  CHECK(n1.per_class == std::vector<double>{0.5, 0.5, 0});

  const std::vector<MembershipRow> two{{{1, 0, 0}, MembershipStage::raw}, {{0, 1, 0}, MembershipStage::raw}};
  CHECK(aggregate_and_normalize(two).per_class == std::vector<double>{0.5, 0.5, 0});

  const std::vector<MembershipRow> zero{{{0, 0, 0}, MembershipStage::raw}};
  CHECK_THROWS_AS(aggregate_and_normalize(zero), DomainError);
  const std::vector<MembershipRow> ragged{{{1, 0}, MembershipStage::raw}, {{0, 1, 0}, MembershipStage::raw}};
  CHECK_THROWS_AS(aggregate_and_normalize(ragged), DomainError);
  CHECK_THROWS_AS(aggregate_and_normalize(std::vector<MembershipRow>{}), DomainError);
}

TEST_CASE("integrate tfn") {
  const auto f = fuzzify_frame(0, 14, 7);
  MembershipRow w{std::vector<double>(7, 0.0), MembershipStage::normalized};
  w.per_class[3] = 1;
  CHECK(integrate_tfn(f, w) == f.at(3).shape);
  w.per_class[3] = 0.5;
  w.per_class[4] = 0.5;
  const auto mid = integrate_tfn(f, w);
  CHECK(mid.a == doctest::Approx((f.at(3).shape.a + f.at(4).shape.a) / 2));
  CHECK(mid.b == doctest::Approx((f.at(3).shape.b + f.at(4).shape.b) / 2));
  CHECK(mid.c == doctest::Approx((f.at(3).shape.c + f.at(4).shape.c) / 2));

  MembershipRow raw = w;
  raw.stage = MembershipStage::raw;
  CHECK_THROWS_AS(integrate_tfn(f, raw), DomainError);
}

TEST_CASE("extract: identical ranges on a class support") {
  const auto f = fuzzify_frame(0, 14, 7);
  const auto &c2 = f.at(2).shape;
  const RangeSet rs{{{c2.b, c2.b}, {c2.b, c2.b}, {c2.b, c2.b}}};
  CHECK(extract(f, rs, with_rstar(0.8)) == c2);
}

TEST_CASE("extract properties on random ranges") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 50; ++round) {
    const double lo = std::uniform_real_distribution<double>(-100, 100)(rng);
    const double span = std::uniform_real_distribution<double>(1, 500)(rng);
    const int m = 3 + round % 7;
    const auto f = fuzzify_frame(lo, lo + span, m);
    const auto rs = random_ranges(rng, lo, lo + span, 1 + round % 10);

    const auto base = extract_detailed(f, rs, with_rstar(1.0));
    const double total = std::accumulate(base.normalized.per_class.begin(), base.normalized.per_class.end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

    // reliability cancels after normalization
    for (double r : {0.05, 0.37, 0.9}) {
      const auto t = extract(f, rs, with_rstar(r));
      CHECK(std::abs(t.a - base.tfn.a) <= 1e-12 * std::max(1.0, std::abs(base.tfn.a)));
      CHECK(std::abs(t.b - base.tfn.b) <= 1e-12 * std::max(1.0, std::abs(base.tfn.b)));
      CHECK(std::abs(t.c - base.tfn.c) <= 1e-12 * std::max(1.0, std::abs(base.tfn.c)));
    }

    // containment and width bound
    CHECK(base.tfn.a >= f.lo() - 1e-9);
    CHECK(base.tfn.c <= f.hi() + 1e-9);
    CHECK(base.tfn.width() <= 2 * span / m + 1e-9);

    // translation
    const double k = 37.5;
    RangeSet moved = rs;
    for (auto &r : moved.ranges) {
      r.p += k;
      r.q += k;
    }
    const auto t2 = extract(fuzzify_frame(lo + k, lo + span + k, m), moved, with_rstar(1.0));
    CHECK(t2.a == doctest::Approx(base.tfn.a + k));
    CHECK(t2.b == doctest::Approx(base.tfn.b + k));
    CHECK(t2.c == doctest::Approx(base.tfn.c + k));
  }
}

TEST_CASE("width reaches the interior class width only without shoulder mass") {
  const auto f = fuzzify_frame(0, 14, 7);
  const RangeSet interior{{{5.5, 6.5}, {7, 8}}};
  CHECK(extract(f, interior, with_rstar(1)).width() == doctest::Approx(4.0));
  const RangeSet edge{{{0, 1}, {6, 8}}};
  CHECK(extract(f, edge, with_rstar(1)).width() < 4.0);
}
