#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sdss/tfn.h"

namespace sdss {

/// Ordered observations x(1) .. x(N) of one (supplier, attribute) pair.
struct TimeSeries {
  std::vector<double> values;
};

struct PossibilityPoint {
  double x = 0.0;
  double mu = 0.0;
};

/// Histogram-based possibility distribution of a sample: bin densities divided
/// by their maximum, so the modal bin has mu = 1.
struct PossibilityEstimate {
  std::vector<PossibilityPoint> grid;  ///< one point per bin, at the bin midpoint
  double lo = 0.0;
  double hi = 0.0;
  double mode_x = 0.0;
  std::size_t bin_count = 0;
  bool degenerate = false;  ///< all samples identical; grid is a single spike
};

enum class TriangleFit {
  /// (min, histogram mode, max).
  mode,
  /// (min, b, max) with b chosen by least squares of a scaled triangle against the grid.
  lsq,
};

struct InductionOptions {
  std::optional<std::size_t> bins;  ///< fixed bin count; Freedman-Diaconis when empty
  TriangleFit fit = TriangleFit::lsq;
};

struct Induction {
  Tfn tfn;
  PossibilityEstimate estimate;
  std::vector<std::string> warnings;
};

/// Lag-one pairs (x(t), x(t+1)), t = 1 .. N-1. Throws DomainError for N < 2.
std::vector<std::pair<double, double>> point_cloud(std::span<const double> series);

/// Freedman-Diaconis bin count, falling back to ceil(sqrt(N)) when the IQR is
/// zero. Never less than 2.
std::size_t freedman_diaconis_bins(std::span<const double> series);

/// Throws DomainError for N < 3, non-finite samples or a fixed bin count < 2.
PossibilityEstimate estimate_possibility(std::span<const double> series,
                                         std::optional<std::size_t> bins = std::nullopt);

/// Full induction with diagnostics. A constant series yields the crisp TFN
/// (v, v, v) and a warning instead of an error.
Induction induce(std::span<const double> series, const InductionOptions &options = {});

inline Tfn induce_tfn(std::span<const double> series, const InductionOptions &options = {}) {
  return induce(series, options).tfn;
}

/// Deterministic triangular(a, b, c) sampler used for synthetic data. The
/// output depends only on (params, n, seed).
std::vector<double> triangular_series(const Tfn &params, std::size_t n, std::uint64_t seed);

}  // namespace sdss
