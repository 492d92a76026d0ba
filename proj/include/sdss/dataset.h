#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sdss/granular.h"
#include "sdss/mcgp.h"
#include "sdss/qualitative.h"
#include "sdss/scale.h"
#include "sdss/temporal.h"
#include "sdss/topsis.h"

namespace sdss {

inline constexpr int kSchemaVersion = 1;

struct Supplier {
  std::string id;
  std::string name;

  friend bool operator==(const Supplier &, const Supplier &) = default;
};

/// An attribute plus its optional frame class count (granular attributes only).
struct AttributeSpec {
  Attribute attribute;
  std::optional<int> classes;

  friend bool operator==(const AttributeSpec &, const AttributeSpec &) = default;
};

struct SeriesEntry {
  std::string supplier;
  std::string attribute;
  std::vector<double> values;

  friend bool operator==(const SeriesEntry &, const SeriesEntry &) = default;
};

struct RangeEntry {
  std::string supplier;
  std::string attribute;
  std::vector<Range> ranges;

  friend bool operator==(const RangeEntry &, const RangeEntry &) = default;
};

/// A precomputed TFN that bypasses the temporal or granular stage for one cell.
struct TfnOverride {
  std::string supplier;
  std::string attribute;
  Tfn tfn;

  friend bool operator==(const TfnOverride &, const TfnOverride &) = default;
};

struct PipelineConfig {
  int frame_classes = 7;
  DistanceVariant distance = DistanceVariant::paper;
  ReliabilityConfig reliability;
  TriangleFit fit = TriangleFit::lsq;
  std::optional<std::size_t> bins;
  /// Ignore overrides for cells that carry raw evidence.
  bool from_raw = false;
  double scri_step = 0.1;
  LeadMode lead_mode = LeadMode::fixed_total;
  bool integerize = false;

  friend bool operator==(const PipelineConfig &, const PipelineConfig &) = default;
};

enum class CoefficientSource { model, ranking };

struct McgpSpec {
  McgpModel model;
  /// `model` keeps the coefficients stored with each supplier; `ranking`
  /// replaces them with the pipeline's closeness coefficients.
  CoefficientSource source = CoefficientSource::model;
  std::map<std::string, std::vector<double>> coefficient_sets;
  std::optional<std::vector<double>> reference_plan;
  std::string note;

  friend bool operator==(const McgpSpec &, const McgpSpec &) = default;
};

struct Dataset {
  std::string name;
  std::vector<Supplier> suppliers;
  std::vector<std::string> decision_makers;
  std::vector<AttributeSpec> attributes;
  std::vector<Appraisal> appraisals;
  std::vector<WeightJudgment> weights;
  std::vector<SeriesEntry> series;
  std::vector<RangeEntry> ranges;
  std::vector<TfnOverride> overrides;
  LinguisticScale performance = performance_scale();
  LinguisticScale weight = weight_scale();
  PipelineConfig config;
  std::optional<McgpSpec> mcgp;

  std::vector<std::string> supplier_ids() const;
  const AttributeSpec *find_attribute(const std::string &id) const;

  friend bool operator==(const Dataset &, const Dataset &) = default;
};

/// One validation finding. `table` is a bundle file name (or a document
/// section) and `row` its 1-based data row, 0 when no row applies.
struct Violation {
  std::string table;
  std::size_t row = 0;
  std::string cell;  ///< e.g. "(S3, C12, DM4)"
  std::string message;

  std::string to_string() const;
  friend bool operator==(const Violation &, const Violation &) = default;
};

/// Collects every violation instead of stopping at the first.
std::vector<Violation> validate(const Dataset &dataset);

struct LoadResult {
  Dataset dataset;
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Reads a bundle directory or a JSON document file. Throws IoError when the
/// path is missing, a file cannot be parsed at all, or the schema version is
/// unsupported; row-level problems become violations.
LoadResult load_dataset(const std::filesystem::path &path);
LoadResult load_bundle(const std::filesystem::path &dir);
LoadResult dataset_from_document(const nlohmann::json &doc);

nlohmann::ordered_json dataset_to_document(const Dataset &dataset);
/// Writes the bundle files into `dir` (created if needed).
void save_bundle(const Dataset &dataset, const std::filesystem::path &dir);

nlohmann::ordered_json config_to_json(const PipelineConfig &config);
/// Applies the keys present in `j` on top of `config`; throws DomainError for
/// unknown values.
PipelineConfig config_from_json(const nlohmann::json &j, PipelineConfig config = {});

nlohmann::ordered_json mcgp_to_json(const McgpSpec &spec);
McgpSpec mcgp_from_json(const nlohmann::json &j);

}  // namespace sdss
