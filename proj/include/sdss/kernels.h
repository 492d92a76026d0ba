#pragma once

// Data-parallel inner loops of the pipeline. Every kernel exists twice with the
// same signature: `serial::` is the straightforward reference used by the
// tests, `omp::` is the OpenMP version the domain modules call. Reductions
// may differ from the serial result by rounding only.

#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "sdss/tfn.h"

namespace sdss::kernels {

struct Interval {
  double p = 0.0;
  double q = 0.0;

  friend bool operator==(const Interval &, const Interval &) = default;
};

/// Distances of one supplier row to the positive and negative ideal anchors.
struct DistancePair {
  double plus = 0.0;
  double minus = 0.0;
};

enum class DistanceVariant {
  /// sqrt of (sum over attributes and components of squared gaps) / 3.
  paper,
  /// sum over attributes of sqrt(component squared gaps / 3).
  per_attribute,
};

/// Mean membership of [p, q] in the triangle `shape`, i.e. the integral of the
/// membership over [p, q] divided by the length of [p, q] intersected with the
/// support. Point intervals evaluate the membership at p; an empty
/// intersection yields 0.
double interval_membership(const Tfn &shape, double p, double q) noexcept;

int thread_count() noexcept;

namespace serial {

/// Row-major |ranges| x |shapes| matrix of interval_membership values.
std::vector<double> membership_matrix(std::span<const Tfn> shapes, std::span<const Interval> ranges);

/// Equal-width bin counts over [lo, hi]; values equal to hi fall in the last
/// bin, values outside are ignored.
std::vector<std::size_t> histogram(std::span<const double> values, double lo, double hi, std::size_t bins);

/// Trapezoid rule for the integral of min(left(x), right(x)) over [x0, x1].
double overlap_integral(const Tfn &left, const Tfn &right, double x0, double x1, std::size_t panels);

/// `cells` is row-major suppliers x attributes; `pis`/`nis` hold one crisp
/// anchor per attribute.
std::vector<DistancePair> ideal_distances(std::span<const Tfn> cells, std::size_t attributes,
                                          std::span<const double> pis, std::span<const double> nis,
                                          DistanceVariant variant);

}  // namespace serial

namespace omp {

std::vector<double> membership_matrix(std::span<const Tfn> shapes, std::span<const Interval> ranges);
std::vector<std::size_t> histogram(std::span<const double> values, double lo, double hi, std::size_t bins);
double overlap_integral(const Tfn &left, const Tfn &right, double x0, double x1, std::size_t panels);
std::vector<DistancePair> ideal_distances(std::span<const Tfn> cells, std::size_t attributes,
                                          std::span<const double> pis, std::span<const double> nis,
                                          DistanceVariant variant);

}  // namespace omp

/// Runs body(i) for i in [0, n), in parallel when `parallel` is set. The first
/// exception thrown by any iteration is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t n, Body &&body, bool parallel = true) {
  std::exception_ptr failure;
  std::mutex guard;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sdss::kernels
