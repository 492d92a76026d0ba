#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdss/kernels.h"
#include "sdss/tfn.h"

namespace sdss {

enum class EvidenceKind { temporal, granular, linguistic };
enum class Objective { max, min };
enum class Group { resilience, cost };
enum class GroupFilter { all, resilience, cost };

using DistanceVariant = kernels::DistanceVariant;

const char *to_string(EvidenceKind v) noexcept;
const char *to_string(Objective v) noexcept;
const char *to_string(Group v) noexcept;
const char *to_string(GroupFilter v) noexcept;
const char *to_string(DistanceVariant v) noexcept;
std::optional<EvidenceKind> parse_evidence_kind(std::string_view s);
std::optional<Objective> parse_objective(std::string_view s);
std::optional<Group> parse_group(std::string_view s);
std::optional<GroupFilter> parse_group_filter(std::string_view s);
std::optional<DistanceVariant> parse_distance_variant(std::string_view s);

struct Attribute {
  std::string id;
  std::string name;
  EvidenceKind kind = EvidenceKind::linguistic;
  Objective objective = Objective::max;
  Group group = Group::resilience;

  friend bool operator==(const Attribute &, const Attribute &) = default;
};

/// Suppliers x attributes grid of TFNs with one TFN weight per attribute.
struct DecisionMatrix {
  std::vector<std::string> suppliers;
  std::vector<Attribute> attributes;
  std::vector<Tfn> cells;  ///< row-major, suppliers x attributes
  std::vector<Tfn> weights;

  std::size_t rows() const noexcept { return suppliers.size(); }
  std::size_t cols() const noexcept { return attributes.size(); }
  const Tfn &cell(std::size_t i, std::size_t j) const { return cells[i * cols() + j]; }
  Tfn &cell(std::size_t i, std::size_t j) { return cells[i * cols() + j]; }

  /// Throws DomainError unless the grid is complete, every TFN is valid and
  /// every weight lies in [0, 1].
  void validate() const;

  friend bool operator==(const DecisionMatrix &, const DecisionMatrix &) = default;
};

/// Keeps only the attributes of one group (all of them for GroupFilter::all).
DecisionMatrix restrict_to(const DecisionMatrix &matrix, GroupFilter filter);

/// Benefit columns are divided by their largest c; cost columns become
/// (min a / c, min a / b, min a / a). Throws DomainError naming the cell when a
/// cost cell has a = 0.
DecisionMatrix normalize(const DecisionMatrix &matrix);

/// Multiplies every cell by its attribute weight.
DecisionMatrix apply_weights(const DecisionMatrix &normalized);

/// Crisp per-attribute anchors: PIS = max c, NIS = min a of the weighted column.
struct IdealSolutions {
  std::vector<Tfn> pis;
  std::vector<Tfn> nis;

  friend bool operator==(const IdealSolutions &, const IdealSolutions &) = default;
};

IdealSolutions ideal_solutions(const DecisionMatrix &weighted);

struct SupplierScore {
  std::string supplier;
  double d_plus = 0.0;
  double d_minus = 0.0;
  double closeness = 0.0;
  int rank = 0;

  friend bool operator==(const SupplierScore &, const SupplierScore &) = default;
};

struct RankingResult {
  std::vector<SupplierScore> scores;  ///< in input supplier order
  std::vector<std::string> attributes;  ///< ids matching the ideal-solution entries
  IdealSolutions ideal;
  DistanceVariant variant = DistanceVariant::paper;
  std::vector<std::string> warnings;

  std::vector<double> closeness() const;
  /// Closeness divided by its sum over suppliers.
  std::vector<double> normalized_closeness() const;
  /// Supplier ids ordered by rank.
  std::vector<std::string> order() const;

  friend bool operator==(const RankingResult &, const RankingResult &) = default;
};

/// Closeness d- / (d+ + d-) and dense ranks (1 = best, ties by input order).
/// A single supplier, or d+ + d- = 0, yields closeness 0.5 and a warning.
RankingResult closeness(const DecisionMatrix &weighted, const IdealSolutions &ideal,
                        DistanceVariant variant = DistanceVariant::paper);

/// normalize -> apply_weights -> ideal_solutions -> closeness.
RankingResult rank(const DecisionMatrix &matrix, DistanceVariant variant = DistanceVariant::paper);

/// Sum-normalized closeness vectors of the resilience-only and cost-only runs.
struct ScriInputs {
  std::vector<std::string> suppliers;
  std::vector<double> resilience;
  std::vector<double> cost;

  friend bool operator==(const ScriInputs &, const ScriInputs &) = default;
};

ScriInputs scri_inputs(const DecisionMatrix &matrix, DistanceVariant variant = DistanceVariant::paper);

/// alpha * resilience + (1 - alpha) * cost per supplier. Throws DomainError for
/// alpha outside [0, 1].
std::vector<double> scri(const ScriInputs &inputs, double alpha);

struct ScriRow {
  double alpha = 0.0;
  std::vector<double> values;
  std::size_t argmax = 0;  ///< first supplier with the largest value

  friend bool operator==(const ScriRow &, const ScriRow &) = default;
};

/// One row of the sweep at an arbitrary alpha in [0, 1].
ScriRow scri_row(const ScriInputs &inputs, double alpha);

/// Rows at alpha = step, 2 step, ... strictly below 1. Throws DomainError
/// unless 0 < step <= 0.5.
std::vector<ScriRow> scri_sweep(const ScriInputs &inputs, double step);

/// CSV with header `alpha,supplier,scri,is_argmax`.
std::string scri_csv(const ScriInputs &inputs, const std::vector<ScriRow> &rows);

}  // namespace sdss
