#include "sdss/kernels.h"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sdss::kernels {

double interval_membership(const Tfn &shape, double p, double q) noexcept {
  if (p == q) return membership(shape, p);
  const double lo = std::max(p, shape.a);
  const double hi = std::min(q, shape.c);
  if (!(hi > lo)) return 0.0;
  // The membership is linear between the breakpoints, so the trapezoid rule on
  // each piece is exact.
  double cuts[4] = {lo, 0.0, 0.0, hi};
  int n = 1;
  if (shape.b > lo && shape.b < hi) cuts[n++] = shape.b;
  cuts[n++] = hi;
  double area = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    area += 0.5 * (membership(shape, cuts[i]) + membership(shape, cuts[i + 1])) * (cuts[i + 1] - cuts[i]);
  }
  return area / (hi - lo);
}

int thread_count() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

inline std::size_t bin_of(double v, double lo, double hi, std::size_t bins) {
  auto idx = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
  return std::min(idx, bins - 1);
}

inline double min_membership(const Tfn &l, const Tfn &r, double x) {
  return std::min(membership(l, x), membership(r, x));
}

inline double sq(double v) { return v * v; }

DistancePair row_distance(std::span<const Tfn> row, std::span<const double> pis, std::span<const double> nis,
                          DistanceVariant variant) {
  DistancePair d;
  if (variant == DistanceVariant::paper) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      const auto &t = row[j];
      d.plus += sq(t.a - pis[j]) + sq(t.b - pis[j]) + sq(t.c - pis[j]);
      d.minus += sq(t.a - nis[j]) + sq(t.b - nis[j]) + sq(t.c - nis[j]);
    }
    d.plus = std::sqrt(d.plus / 3.0);
    d.minus = std::sqrt(d.minus / 3.0);
  } else {
    for (std::size_t j = 0; j < row.size(); ++j) {
      const auto &t = row[j];
      d.plus += std::sqrt((sq(t.a - pis[j]) + sq(t.b - pis[j]) + sq(t.c - pis[j])) / 3.0);
      d.minus += std::sqrt((sq(t.a - nis[j]) + sq(t.b - nis[j]) + sq(t.c - nis[j])) / 3.0);
    }
  }
  return d;
}

}  // namespace

namespace serial {

std::vector<double> membership_matrix(std::span<const Tfn> shapes, std::span<const Interval> ranges) {
  std::vector<double> out(ranges.size() * shapes.size());
  for (std::size_t r = 0; r < ranges.size(); ++r) {
    for (std::size_t l = 0; l < shapes.size(); ++l) {
      out[r * shapes.size() + l] = interval_membership(shapes[l], ranges[r].p, ranges[r].q);
    }
  }
  return out;
}

std::vector<std::size_t> histogram(std::span<const double> values, double lo, double hi, std::size_t bins) {
  std::vector<std::size_t> counts(bins, 0);
  if (bins == 0 || !(hi > lo)) return counts;
  for (double v : values) {
    if (v < lo || v > hi) continue;
    ++counts[bin_of(v, lo, hi, bins)];
  }
  return counts;
}

double overlap_integral(const Tfn &left, const Tfn &right, double x0, double x1, std::size_t panels) {
  if (!(x1 > x0) || panels == 0) return 0.0;
  const double h = (x1 - x0) / static_cast<double>(panels);
  double sum = 0.5 * (min_membership(left, right, x0) + min_membership(left, right, x1));
  for (std::size_t i = 1; i < panels; ++i) sum += min_membership(left, right, x0 + static_cast<double>(i) * h);
  return sum * h;
}

std::vector<DistancePair> ideal_distances(std::span<const Tfn> cells, std::size_t attributes,
                                          std::span<const double> pis, std::span<const double> nis,
                                          DistanceVariant variant) {
  const std::size_t rows = attributes == 0 ? 0 : cells.size() / attributes;
  std::vector<DistancePair> out(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    out[i] = row_distance(cells.subspan(i * attributes, attributes), pis, nis, variant);
  }
  return out;
}

}  // namespace serial

namespace omp {

std::vector<double> membership_matrix(std::span<const Tfn> shapes, std::span<const Interval> ranges) {
  std::vector<double> out(ranges.size() * shapes.size());
  const auto total = static_cast<long long>(out.size());
  const std::size_t width = shapes.size();
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < total; ++k) {
    const auto r = static_cast<std::size_t>(k) / width;
    const auto l = static_cast<std::size_t>(k) % width;
    out[static_cast<std::size_t>(k)] = interval_membership(shapes[l], ranges[r].p, ranges[r].q);
  }
  return out;
}

std::vector<std::size_t> histogram(std::span<const double> values, double lo, double hi, std::size_t bins) {
  std::vector<std::size_t> counts(bins, 0);
  if (bins == 0 || !(hi > lo)) return counts;
  const auto n = static_cast<long long>(values.size());
#pragma omp parallel
  {
    std::vector<std::size_t> local(bins, 0);
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < n; ++i) {
      const double v = values[static_cast<std::size_t>(i)];
      if (v < lo || v > hi) continue;
      ++local[bin_of(v, lo, hi, bins)];
    }
#pragma omp critical(sdss_histogram_merge)
    for (std::size_t b = 0; b < bins; ++b) counts[b] += local[b];
  }
  return counts;
}

double overlap_integral(const Tfn &left, const Tfn &right, double x0, double x1, std::size_t panels) {
  if (!(x1 > x0) || panels == 0) return 0.0;
  const double h = (x1 - x0) / static_cast<double>(panels);
  double sum = 0.0;
  const auto n = static_cast<long long>(panels);
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (long long i = 1; i < n; ++i) sum += min_membership(left, right, x0 + static_cast<double>(i) * h);
  sum += 0.5 * (min_membership(left, right, x0) + min_membership(left, right, x1));
  return sum * h;
}

std::vector<DistancePair> ideal_distances(std::span<const Tfn> cells, std::size_t attributes,
                                          std::span<const double> pis, std::span<const double> nis,
                                          DistanceVariant variant) {
  const std::size_t rows = attributes == 0 ? 0 : cells.size() / attributes;
  std::vector<DistancePair> out(rows);
  const auto n = static_cast<long long>(rows);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(i);
    out[r] = row_distance(cells.subspan(r * attributes, attributes), pis, nis, variant);
  }
  return out;
}

}  // namespace omp

}  // namespace sdss::kernels
