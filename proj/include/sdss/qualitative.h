#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdss/scale.h"
#include "sdss/tfn.h"

namespace sdss {

/// One decision maker's linguistic rating of a supplier on an attribute.
struct Appraisal {
  std::string supplier;
  std::string attribute;
  std::string dm;
  std::string term;

  friend bool operator==(const Appraisal &, const Appraisal &) = default;
};

/// One decision maker's importance rating of an attribute.
struct WeightJudgment {
  std::string attribute;
  std::string dm;
  std::string term;

  friend bool operator==(const WeightJudgment &, const WeightJudgment &) = default;
};

/// Looks up a term; `where` is prepended to the error message (e.g. "(S1, C5, DM2)").
Tfn term_to_tfn(std::string_view term, const LinguisticScale &scale, std::string_view where = {});

/// (min a, mean b, max c). Throws DomainError on an empty list.
Tfn aggregate_dms(std::span<const Tfn> tfns);

/// Converts and aggregates the appraisals of one (supplier, attribute) cell.
/// Every DM in `dms` must appear exactly once.
Tfn build_qualitative_tfn(std::span<const Appraisal> cell, std::span<const std::string> dms,
                          const LinguisticScale &scale = performance_scale());

/// Same for the weight judgments of one attribute.
Tfn build_weight_tfn(std::span<const WeightJudgment> judgments, std::span<const std::string> dms,
                     const LinguisticScale &scale = weight_scale());

}  // namespace sdss
