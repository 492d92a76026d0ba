#include "sdss/granular.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sdss/error.h"

namespace sdss {

const char *to_string(MembershipStage stage) noexcept {
  switch (stage) {
    case MembershipStage::raw:
      return "raw";
    case MembershipStage::reliability_modified:
      return "reliabilityModified";
    case MembershipStage::aggregated:
      return "aggregated";
    case MembershipStage::normalized:
      return "normalized";
  }
  return "unknown";
}

namespace {

void require_ordered(Range r) {
  if (!std::isfinite(r.p) || !std::isfinite(r.q)) throw DomainError("range bounds must be finite");
  if (r.p > r.q) {
    throw DomainError("range [" + std::to_string(r.p) + ", " + std::to_string(r.q) + "] has p > q");
  }
}

double triangle_area(const Tfn &t) { return 0.5 * (t.c - t.a); }

}  // namespace

double range_membership(const Frame &frame, std::size_t class_index, Range range) {
  require_ordered(range);
  return kernels::interval_membership(frame.at(class_index).shape, range.p, range.q);
}

double class_similarity(const Tfn &left, const Tfn &right) {
  const double x0 = std::max(left.a, right.a);
  const double x1 = std::min(left.c, right.c);
  if (!(x1 > x0)) return 0.0;
  const double overlap = kernels::omp::overlap_integral(left, right, x0, x1, kOverlapPanels);
  const double uni = triangle_area(left) + triangle_area(right) - overlap;
  if (uni <= 0.0) return 0.0;
  return overlap / uni;
}

double static_reliability(std::span<const Tfn> classes) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < classes.size(); ++k) total += 1.0 - class_similarity(classes[k], classes[k + 1]);
  return total;
}

double static_reliability(const Frame &frame) {
  const auto shapes = frame.shapes();
  return static_reliability(shapes);
}

double dynamic_reliability(const Frame &frame, std::span<const double> samples) {
  if (samples.empty()) throw DomainError("dynamic reliability needs at least one test sample");
  std::vector<double> inside;
  for (double t : samples) {
    if (t >= frame.lo() && t <= frame.hi()) inside.push_back(t);
  }
  if (inside.empty()) throw DomainError("no test sample lies inside the frame");
  const double span = frame.span();
  double exponent = 0.0;
  for (double peak : frame.crossings()) {
    double d = 0.0;
    for (double t : inside) d += std::abs(t - peak) / span;
    exponent += d / static_cast<double>(inside.size());
  }
  return std::exp(exponent);
}

std::vector<double> reliability_samples(const Frame &frame, std::span<const Range> ranges,
                                        const ReliabilityConfig &config) {
  if (config.mode == SampleMode::midpoint_mean) {
    if (ranges.empty()) return {0.5 * (frame.lo() + frame.hi())};
    double sum = 0.0;
    for (const auto &r : ranges) sum += 0.5 * (r.p + r.q);
    return {sum / static_cast<double>(ranges.size())};
  }
  std::mt19937_64 rng(config.seed);
  std::vector<double> out;
  const std::size_t count = std::max<std::size_t>(config.samples, 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    out.push_back(frame.lo() + u * frame.span());
  }
  return out;
}

std::vector<ReliabilityReport> reliability_reports(std::span<const Frame> frames,
                                                   std::span<const std::vector<double>> samples) {
  if (frames.size() != samples.size()) throw DomainError("one sample list per frame is required");
  std::vector<ReliabilityReport> out(frames.size());
  double top = 0.0;
  for (std::size_t j = 0; j < frames.size(); ++j) {
    auto &r = out[j];
    r.static_index = static_reliability(frames[j]);
    r.dynamic_index = dynamic_reliability(frames[j], samples[j]);
    r.comprehensive = r.static_index * r.dynamic_index;
    r.test_samples = samples[j];
    top = std::max(top, r.comprehensive);
  }
  for (auto &r : out) {
    if (!(top > 0.0)) throw DomainError("comprehensive reliability is zero for every attribute");
    r.normalized = r.comprehensive / top;
  }
  return out;
}

std::vector<MembershipRow> membership_rows(const Frame &frame, std::span<const Range> ranges) {
  for (const auto &r : ranges) require_ordered(r);
  const auto shapes = frame.shapes();
  const auto matrix = kernels::omp::membership_matrix(shapes, ranges);
  std::vector<MembershipRow> rows(ranges.size());
  for (std::size_t r = 0; r < ranges.size(); ++r) {
    rows[r].per_class.assign(matrix.begin() + static_cast<std::ptrdiff_t>(r * shapes.size()),
                             matrix.begin() + static_cast<std::ptrdiff_t>((r + 1) * shapes.size()));
  }
  return rows;
}

MembershipRow reliability_modify(const MembershipRow &raw, double r_star) {
  if (!(r_star > 0.0) || r_star > 1.0) throw DomainError("normalized reliability must lie in (0, 1]");
  MembershipRow out{raw.per_class, MembershipStage::reliability_modified};
  for (double &m : out.per_class) m *= r_star;
  return out;
}

MembershipRow aggregate_and_normalize(std::span<const MembershipRow> rows) {
  if (rows.empty()) throw DomainError("no membership rows to aggregate");
  const std::size_t width = rows.front().per_class.size();
  MembershipRow out{std::vector<double>(width, 0.0), MembershipStage::aggregated};
  for (const auto &row : rows) {
    if (row.per_class.size() != width) throw DomainError("membership rows have different class counts");
    for (std::size_t l = 0; l < width; ++l) out.per_class[l] += row.per_class[l];
  }
  const double total = std::accumulate(out.per_class.begin(), out.per_class.end(), 0.0);
  if (!(total > 0.0)) throw DomainError("ranges carry no membership mass");
  for (double &m : out.per_class) m /= total;
  out.stage = MembershipStage::normalized;
  return out;
}

Tfn integrate_tfn(const Frame &frame, const MembershipRow &normalized) {
  if (normalized.stage != MembershipStage::normalized) {
    throw DomainError(std::string("integrate_tfn expects a normalized row, got ") + to_string(normalized.stage));
  }
  if (normalized.per_class.size() != frame.class_count()) throw DomainError("row does not match the frame");
  Tfn out{0.0, 0.0, 0.0};
  for (std::size_t l = 0; l < frame.class_count(); ++l) {
    const auto &s = frame.classes()[l].shape;
    const double w = normalized.per_class[l];
    out.a += s.a * w;
    out.b += s.b * w;
    out.c += s.c * w;
  }
  return out;
}

Extraction extract_detailed(const Frame &frame, const RangeSet &ranges, const ReliabilityReport &reliability) {
  if (ranges.ranges.empty()) throw DomainError("range set is empty");
  Extraction out;
  out.raw = membership_rows(frame, ranges.ranges);
  out.modified.reserve(out.raw.size());
  for (const auto &row : out.raw) out.modified.push_back(reliability_modify(row, reliability.normalized));
  out.normalized = aggregate_and_normalize(out.modified);
  out.tfn = integrate_tfn(frame, out.normalized);
  return out;
}

}  // namespace sdss
