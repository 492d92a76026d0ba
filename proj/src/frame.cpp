#include "sdss/frame.h"

#include <array>
#include <cmath>
#include <stdexcept>

#include "sdss/error.h"

namespace sdss {

namespace {

constexpr std::array<const char *, 7> kSevenLabels{"B", "MB", "M", "MG", "G", "VG", "VVG"};

std::string class_label(int m, int index) {
  if (m == 7) return kSevenLabels[static_cast<std::size_t>(index)];
  return "L" + std::to_string(index + 1);
}

}  // namespace

const FrameClass &Frame::at(std::size_t index) const {
  if (index >= classes_.size()) {
    throw std::out_of_range("class index " + std::to_string(index) + " out of range for a " +
                            std::to_string(classes_.size()) + "-class frame");
  }
  return classes_[index];
}

std::vector<Tfn> Frame::shapes() const {
  std::vector<Tfn> out;
  out.reserve(classes_.size());
  for (const auto &c : classes_) out.push_back(c.shape);
  return out;
}

std::vector<double> Frame::crossings() const {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < classes_.size(); ++k) {
    out.push_back(edge_crossing(classes_[k].shape, classes_[k + 1].shape));
  }
  return out;
}

Frame Frame::from_classes(double lo, double hi, std::vector<FrameClass> classes) {
  if (!(lo < hi)) throw DomainError("frame requires lo < hi");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto &s = classes[i].shape;
    make_tfn(s.a, s.b, s.c);
    if (s.a < lo || s.c > hi) throw DomainError("frame class " + classes[i].label + " leaves the frame");
    if (i > 0 && classes[i - 1].shape.b > s.b) throw DomainError("frame classes must be ordered by peak");
  }
  Frame f;
  f.lo_ = lo;
  f.hi_ = hi;
  f.classes_ = std::move(classes);
  return f;
}

Frame fuzzify_frame(double lo, double hi, int m) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("frame of discernment requires lo < hi");
  }
  if (m < 2) throw DomainError("frame needs at least 2 classes");

  Frame f;
  f.lo_ = lo;
  f.hi_ = hi;
  const double step = (hi - lo) / (2.0 * m);
  // knot(i) for i in [0, 2m]; knot(0) = lo and knot(2m) = hi exactly.
  auto knot = [&](int i) {
    if (i <= 0) return lo;
    if (i >= 2 * m) return hi;
    return lo + i * step;
  };
  for (int i = 1; i <= 2 * m - 1; ++i) f.knots_.push_back(knot(i));

  f.classes_.push_back({class_label(m, 0), Tfn{lo, lo, knot(3)}});
  for (int k = 2; k <= m - 1; ++k) {
    f.classes_.push_back({class_label(m, k - 1), Tfn{knot(2 * k - 3), knot(2 * k - 1), knot(2 * k + 1)}});
  }
  f.classes_.push_back({class_label(m, m - 1), Tfn{knot(2 * m - 3), hi, hi}});
  return f;
}

double class_membership(const Frame &frame, std::size_t class_index, double t) {
  return membership(frame.at(class_index).shape, t);
}

double edge_crossing(const Tfn &left, const Tfn &right) {
  // Falling edge of left: (c1 - x) / (c1 - b1); rising edge of right: (x - a2) / (b2 - a2).
  const double fall = left.c - left.b;
  const double rise = right.b - right.a;
  if (!(right.a < left.c)) throw DomainError("classes do not overlap");
  if (fall == 0.0) return left.c;
  if (rise == 0.0) return right.a;
  return (left.c * rise + right.a * fall) / (rise + fall);
}

}  // namespace sdss
