#pragma once

#include <span>
#include <string>
#include <vector>

#include "sdss/tfn.h"

namespace sdss {

/// One linguistic class of a fuzzified frame. The membership function is the
/// triangle described by `shape`; shoulder classes have a flat edge at the
/// frame boundary.
struct FrameClass {
  std::string label;
  Tfn shape;

  friend bool operator==(const FrameClass &, const FrameClass &) = default;
};

/// A fuzzified frame of discernment U = [lo, hi] split into m overlapping
/// triangular classes.
///
/// Knots sit at a_i = lo + i (hi - lo) / (2m), i = 1 .. 2m-1. The first class
/// peaks at lo with support [lo, a_3], the last peaks at hi with support
/// [a_{2m-3}, hi], and interior class k (1-based, k = 2 .. m-1) peaks at
/// a_{2k-1} with support [a_{2k-3}, a_{2k+1}].
class Frame {
 public:
  Frame() = default;

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double span() const noexcept { return hi_ - lo_; }
  std::size_t class_count() const noexcept { return classes_.size(); }
  const std::vector<FrameClass> &classes() const noexcept { return classes_; }
  const FrameClass &at(std::size_t index) const;
  /// Knot positions a_1 .. a_{2m-1}; empty for frames built from explicit classes.
  const std::vector<double> &knots() const noexcept { return knots_; }
  /// Class representative TFNs in order.
  std::vector<Tfn> shapes() const;

  /// x-positions where adjacent class memberships cross (one per adjacent pair).
  std::vector<double> crossings() const;

  /// Wraps explicit classes, e.g. to model a hypothetical partition. Classes
  /// must be ordered by peak and lie inside [lo, hi].
  static Frame from_classes(double lo, double hi, std::vector<FrameClass> classes);

  friend bool operator==(const Frame &, const Frame &) = default;
  friend Frame fuzzify_frame(double lo, double hi, int m);

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<double> knots_;
  std::vector<FrameClass> classes_;
};

/// Builds the m-class frame over [lo, hi]. Throws DomainError for lo >= hi or m < 2.
Frame fuzzify_frame(double lo, double hi, int m = 7);

/// Membership of t in one class; 0 outside the class support. Throws
/// std::out_of_range for a bad class index.
double class_membership(const Frame &frame, std::size_t class_index, double t);

/// Crossing abscissa of the falling edge of `left` and the rising edge of
/// `right`. Requires the supports to overlap.
double edge_crossing(const Tfn &left, const Tfn &right);

}  // namespace sdss
