#include "sdss/temporal.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "sdss/error.h"
#include "sdss/kernels.h"

namespace sdss {

namespace {

void require_finite(std::span<const double> series) {
  for (double v : series) {
    if (!std::isfinite(v)) throw DomainError("time series contains a non-finite value");
  }
}

// Linear-interpolation quantile of sorted data.
double quantile(const std::vector<double> &sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double triangle_residual(const PossibilityEstimate &est, double peak) {
  const Tfn shape{est.lo, peak, est.hi};
  double tt = 0.0, tm = 0.0, mm = 0.0;
  for (const auto &g : est.grid) {
    const double t = membership(shape, g.x);
    tt += t * t;
    tm += t * g.mu;
    mm += g.mu * g.mu;
  }
  if (tt == 0.0) return mm;
  // Residual with the optimal height h = tm / tt.
  return mm - tm * tm / tt;
}

double fit_peak_unit(const PossibilityEstimate &est) {
  constexpr int kScan = 2048;
  const double step = (est.hi - est.lo) / kScan;
  int best = 0;
  double best_r = triangle_residual(est, est.lo);
  for (int k = 1; k <= kScan; ++k) {
    const double r = triangle_residual(est, k == kScan ? est.hi : est.lo + k * step);
    if (r < best_r) {
      best_r = r;
      best = k;
    }
  }
  // Golden-section refinement around the best scan point.
  double left = std::max(est.lo, est.lo + (best - 1) * step);
  double right = std::min(est.hi, est.lo + (best + 1) * step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = right - inv_phi * (right - left);
  double x2 = left + inv_phi * (right - left);
  double f1 = triangle_residual(est, x1);
  double f2 = triangle_residual(est, x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 <= f2) {
      right = x2;
      x2 = x1;
      f2 = f1;
      x1 = right - inv_phi * (right - left);
      f1 = triangle_residual(est, x1);
    } else {
      left = x1;
      x1 = x2;
      f1 = f2;
      x2 = left + inv_phi * (right - left);
      f2 = triangle_residual(est, x2);
    }
  }
  const double refined = 0.5 * (left + right);
  const double scanned = best == kScan ? est.hi : est.lo + best * step;
  return triangle_residual(est, refined) <= best_r ? refined : scanned;
}

// Fit on [0, 1] so the peak moves with the data under shift and scale.
double fit_peak_lsq(const PossibilityEstimate &est) {
  PossibilityEstimate unit = est;
  unit.lo = 0.0;
  unit.hi = 1.0;
  const double n = static_cast<double>(est.grid.size());
  for (std::size_t i = 0; i < unit.grid.size(); ++i) unit.grid[i].x = (static_cast<double>(i) + 0.5) / n;
  return est.lo + fit_peak_unit(unit) * (est.hi - est.lo);
}

}  // namespace

std::vector<std::pair<double, double>> point_cloud(std::span<const double> series) {
  if (series.size() < 2) throw DomainError("point cloud needs at least 2 observations");
  std::vector<std::pair<double, double>> cloud;
  cloud.reserve(series.size() - 1);
  for (std::size_t t = 0; t + 1 < series.size(); ++t) cloud.emplace_back(series[t], series[t + 1]);
  return cloud;
}

std::size_t freedman_diaconis_bins(std::span<const double> series) {
  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  const double range = sorted.back() - sorted.front();
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  const double n = static_cast<double>(sorted.size());
  std::size_t bins;
  if (iqr > 0.0 && range > 0.0) {
    const double width = 2.0 * iqr / std::cbrt(n);
    bins = static_cast<std::size_t>(std::ceil(range / width));
  } else {
    bins = static_cast<std::size_t>(std::ceil(std::sqrt(n)));
  }
  return std::max<std::size_t>(bins, 2);
}

PossibilityEstimate estimate_possibility(std::span<const double> series, std::optional<std::size_t> bins) {
  if (series.size() < 3) throw DomainError("possibility estimate needs at least 3 observations");
  require_finite(series);
  if (bins && *bins < 2) throw DomainError("bin count must be at least 2");

  const auto [mn, mx] = std::minmax_element(series.begin(), series.end());
  PossibilityEstimate est;
  est.lo = *mn;
  est.hi = *mx;
  if (est.lo == est.hi) {
    est.degenerate = true;
    est.bin_count = 1;
    est.mode_x = est.lo;
    est.grid.push_back({est.lo, 1.0});
    return est;
  }

  est.bin_count = bins ? *bins : freedman_diaconis_bins(series);
  const auto counts = kernels::omp::histogram(series, est.lo, est.hi, est.bin_count);
  const std::size_t peak = *std::max_element(counts.begin(), counts.end());
  const double width = (est.hi - est.lo) / static_cast<double>(est.bin_count);

  double mode_sum = 0.0;
  std::size_t mode_bins = 0;
  est.grid.reserve(est.bin_count);
  for (std::size_t i = 0; i < est.bin_count; ++i) {
    const double mid = est.lo + (static_cast<double>(i) + 0.5) * width;
    est.grid.push_back({mid, static_cast<double>(counts[i]) / static_cast<double>(peak)});
    if (counts[i] == peak) {
      mode_sum += mid;
      ++mode_bins;
    }
  }
  est.mode_x = mode_sum / static_cast<double>(mode_bins);
  return est;
}

Induction induce(std::span<const double> series, const InductionOptions &options) {
  Induction out;
  out.estimate = estimate_possibility(series, options.bins);
  const auto &est = out.estimate;
  if (est.degenerate) {
    out.tfn = crisp(est.lo);
    out.warnings.push_back("constant series: induced a crisp TFN");
    return out;
  }
  double peak = options.fit == TriangleFit::lsq ? fit_peak_lsq(est) : est.mode_x;
  peak = std::clamp(peak, est.lo, est.hi);
  out.tfn = Tfn{est.lo, peak, est.hi};
  return out;
}

std::vector<double> triangular_series(const Tfn &params, std::size_t n, std::uint64_t seed) {
  make_tfn(params.a, params.b, params.c);
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  out.reserve(n);
  const double span = params.c - params.a;
  const double split = span > 0.0 ? (params.b - params.a) / span : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double x;
    if (span == 0.0) {
      x = params.a;
    } else if (u < split) {
      x = params.a + std::sqrt(u * span * (params.b - params.a));
    } else {
      x = params.c - std::sqrt((1.0 - u) * span * (params.c - params.b));
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace sdss
