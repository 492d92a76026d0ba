#include <cmath>
#include <limits>

#include "doctest.h"
#include "sdss/error.h"
#include "sdss/tfn.h"

using namespace sdss;

TEST_CASE("make_tfn validates order and finiteness") {
  CHECK(make_tfn(1, 2, 3) == Tfn{1, 2, 3});
  CHECK(make_tfn(2, 2, 2).crisp());
  CHECK_THROWS_AS(make_tfn(3, 2, 4), DomainError);
  CHECK_THROWS_AS(make_tfn(1, 4, 3), DomainError);
  CHECK_THROWS_AS(make_tfn(std::nan(""), 1, 2), DomainError);
  CHECK_THROWS_AS(make_tfn(0, 1, std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("arithmetic") {
  const Tfn x{1, 2, 3}, y{2, 4, 7};
  CHECK(x + y == Tfn{3, 6, 10});
  CHECK(y - x == Tfn{-1, 2, 6});
  CHECK((y - x).valid());
  CHECK(x * y == Tfn{2, 8, 21});
  CHECK(scale(x, 0.5) == Tfn{0.5, 1, 1.5});
  CHECK_THROWS_AS(Tfn({-1, 0, 1}) * x, DomainError);
  CHECK_THROWS_AS(scale(x, -1.0), DomainError);
}

TEST_CASE("membership is piecewise linear with flat shoulders") {
  const Tfn t{0, 2, 4};
  CHECK(membership(t, -1) == 0.0);
  CHECK(membership(t, 0) == 0.0);
  CHECK(membership(t, 1) == doctest::Approx(0.5));
  CHECK(membership(t, 2) == 1.0);
  CHECK(membership(t, 3) == doctest::Approx(0.5));
  CHECK(membership(t, 5) == 0.0);
  CHECK(membership(Tfn{0, 0, 4}, 0) == 1.0);
  CHECK(membership(Tfn{0, 4, 4}, 4) == 1.0);
  CHECK(membership(crisp(3), 3) == 1.0);
}

TEST_CASE("max_abs_diff and printing") {
  CHECK(max_abs_diff({1, 2, 3}, {1, 2.5, 2}) == doctest::Approx(1.0));
  CHECK(to_string(Tfn{1, 2, 3}).find('2') != std::string::npos);
}

TEST_CASE("addition and nonnegative products preserve validity") {
  for (int i = 0; i < 200; ++i) {
    const double a = i % 7, b = a + (i % 3), c = b + (i % 5);
    const Tfn x{a, b, c}, y{c, c + 1, c + 2};
    CHECK((x + y).valid());
    CHECK((x * y).valid());
    CHECK((y - x).valid());
  }
}
