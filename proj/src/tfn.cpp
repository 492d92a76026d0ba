#include "sdss/tfn.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "sdss/error.h"

namespace sdss {

Tfn make_tfn(double a, double b, double c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw DomainError("TFN components must be finite");
  }
  Tfn t{a, b, c};
  if (!t.valid()) throw DomainError("TFN requires a <= b <= c, got " + to_string(t));
  return t;
}

Tfn add(const Tfn &x, const Tfn &y) noexcept { return {x.a + y.a, x.b + y.b, x.c + y.c}; }

Tfn sub(const Tfn &x, const Tfn &y) noexcept { return {x.a - y.c, x.b - y.b, x.c - y.a}; }

Tfn mul(const Tfn &x, const Tfn &y) {
  if (!x.nonnegative() || !y.nonnegative()) {
    throw DomainError("TFN product is only defined here for nonnegative operands: " + to_string(x) +
                      " x " + to_string(y));
  }
  return {x.a * y.a, x.b * y.b, x.c * y.c};
}

Tfn scale(const Tfn &x, double r) {
  if (!(r >= 0.0)) throw DomainError("TFN scale factor must be >= 0");
  return {x.a * r, x.b * r, x.c * r};
}

double membership(const Tfn &x, double t) noexcept {
  if (t < x.a || t > x.c) return 0.0;
  if (t <= x.b) {
    if (x.b == x.a) return 1.0;
    return (t - x.a) / (x.b - x.a);
  }
  if (x.c == x.b) return 1.0;
  return (x.c - t) / (x.c - x.b);
}

double max_abs_diff(const Tfn &x, const Tfn &y) noexcept {
  return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c)});
}

std::string to_string(const Tfn &x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%g, %g, %g)", x.a, x.b, x.c);
  return buf;
}

std::ostream &operator<<(std::ostream &os, const Tfn &x) { return os << to_string(x); }

}  // namespace sdss
