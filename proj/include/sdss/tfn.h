#pragma once

#include <iosfwd>
#include <string>

namespace sdss {

/// Triangular fuzzy number (a, b, c) with support [a, c] and core b.
///
/// A default-constructed Tfn is the crisp zero (0, 0, 0). Use make_tfn() to
/// build one from untrusted values; the aggregate form is for literals that
/// are known to be ordered.
struct Tfn {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  bool valid() const noexcept { return a <= b && b <= c; }
  bool crisp() const noexcept { return a == b && b == c; }
  bool nonnegative() const noexcept { return a >= 0.0; }
  double width() const noexcept { return c - a; }

  friend bool operator==(const Tfn &, const Tfn &) = default;
};

/// Validating constructor; throws DomainError when a <= b <= c fails or a
/// component is not finite.
Tfn make_tfn(double a, double b, double c);

/// Crisp embedding (v, v, v).
constexpr Tfn crisp(double v) noexcept { return Tfn{v, v, v}; }

Tfn add(const Tfn &x, const Tfn &y) noexcept;
/// Fuzzy subtraction (a1 - c2, b1 - b2, c1 - a2).
Tfn sub(const Tfn &x, const Tfn &y) noexcept;
/// Component-wise product. Both operands must be nonnegative; mixed signs
/// would break a <= b <= c, so they are rejected with DomainError.
Tfn mul(const Tfn &x, const Tfn &y);
/// (a r, b r, c r) for r >= 0.
Tfn scale(const Tfn &x, double r);

inline Tfn operator+(const Tfn &x, const Tfn &y) noexcept { return add(x, y); }
inline Tfn operator-(const Tfn &x, const Tfn &y) noexcept { return sub(x, y); }
inline Tfn operator*(const Tfn &x, const Tfn &y) { return mul(x, y); }

/// Piecewise-linear membership. Flat edges (a == b or b == c) evaluate to 1
/// at the flat end; outside [a, c] the value is 0.
double membership(const Tfn &x, double t) noexcept;

/// Largest absolute component difference.
double max_abs_diff(const Tfn &x, const Tfn &y) noexcept;

std::string to_string(const Tfn &x);
std::ostream &operator<<(std::ostream &os, const Tfn &x);

}  // namespace sdss
