#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdss/frame.h"
#include "sdss/kernels.h"
#include "sdss/tfn.h"

namespace sdss {

using Range = kernels::Interval;

/// Crisp granular ranges [p, q] for one (supplier, attribute) pair.
struct RangeSet {
  std::vector<Range> ranges;
};

enum class MembershipStage { raw, reliability_modified, aggregated, normalized };

const char *to_string(MembershipStage stage) noexcept;

/// Per-class membership degrees of one range (or an aggregate of several).
struct MembershipRow {
  std::vector<double> per_class;
  MembershipStage stage = MembershipStage::raw;

  friend bool operator==(const MembershipRow &, const MembershipRow &) = default;
};

/// Static, dynamic and comprehensive reliability of one attribute's frame.
struct ReliabilityReport {
  double static_index = 0.0;
  double dynamic_index = 1.0;
  double comprehensive = 0.0;
  double normalized = 1.0;  ///< comprehensive / max over the attributes reported together
  std::vector<double> test_samples;

  friend bool operator==(const ReliabilityReport &, const ReliabilityReport &) = default;
};

enum class SampleMode {
  /// One sample at the mean of every range midpoint of the attribute.
  midpoint_mean,
  /// `count` samples uniform over the frame, drawn from `seed`.
  seeded_uniform,
};

struct ReliabilityConfig {
  SampleMode mode = SampleMode::midpoint_mean;
  std::size_t samples = 1;
  std::uint64_t seed = 0;

  friend bool operator==(const ReliabilityConfig &, const ReliabilityConfig &) = default;
};

/// Number of trapezoid panels used per class overlap.
inline constexpr std::size_t kOverlapPanels = 4096;

/// Mean membership of `range` in one class. Throws DomainError for p > q.
double range_membership(const Frame &frame, std::size_t class_index, Range range);

/// Similarity of two membership triangles: overlap area over union area.
double class_similarity(const Tfn &left, const Tfn &right);

/// Sum over adjacent class pairs of (1 - similarity).
double static_reliability(std::span<const Tfn> classes);
double static_reliability(const Frame &frame);

/// exp of the summed risk distances |T - P| / (hi - lo) over adjacent-pair
/// crossings P; with several samples each pair uses the mean distance.
/// Samples outside the frame are ignored; throws DomainError when none remain.
double dynamic_reliability(const Frame &frame, std::span<const double> samples);

/// Test samples for one attribute according to `config`. `ranges` are all the
/// attribute's ranges across suppliers.
std::vector<double> reliability_samples(const Frame &frame, std::span<const Range> ranges,
                                        const ReliabilityConfig &config);

/// Reports for several attributes, normalized against their common maximum.
std::vector<ReliabilityReport> reliability_reports(std::span<const Frame> frames,
                                                   std::span<const std::vector<double>> samples);

/// Raw membership rows for each range against every class of the frame.
std::vector<MembershipRow> membership_rows(const Frame &frame, std::span<const Range> ranges);

/// Scales a raw row by r* in (0, 1].
MembershipRow reliability_modify(const MembershipRow &raw, double r_star);

/// Per-class sum over rows, divided by the grand total.
MembershipRow aggregate_and_normalize(std::span<const MembershipRow> rows);

/// Convex combination of the class TFNs weighted by a normalized row.
Tfn integrate_tfn(const Frame &frame, const MembershipRow &normalized);

/// Intermediate products of extract(), kept for audit.
struct Extraction {
  std::vector<MembershipRow> raw;
  std::vector<MembershipRow> modified;
  MembershipRow normalized;
  Tfn tfn;
};

Extraction extract_detailed(const Frame &frame, const RangeSet &ranges, const ReliabilityReport &reliability);

inline Tfn extract(const Frame &frame, const RangeSet &ranges, const ReliabilityReport &reliability) {
  return extract_detailed(frame, ranges, reliability).tfn;
}

}  // namespace sdss
