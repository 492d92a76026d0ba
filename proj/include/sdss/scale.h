#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdss/tfn.h"

namespace sdss {

struct ScaleEntry {
  std::string term;
  Tfn tfn;

  friend bool operator==(const ScaleEntry &, const ScaleEntry &) = default;
};

/// An ordered set of linguistic terms, each bound to a TFN. Terms are unique
/// and peaks strictly increase along the list.
class LinguisticScale {
 public:
  LinguisticScale() = default;
  /// Throws DomainError on duplicate terms, invalid TFNs, or peaks that are not
  /// strictly increasing.
  LinguisticScale(std::string name, std::vector<ScaleEntry> entries);

  const std::string &name() const noexcept { return name_; }
  const std::vector<ScaleEntry> &entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  std::optional<Tfn> find(std::string_view term) const;
  bool contains(std::string_view term) const { return find(term).has_value(); }
  /// Position of the term on the scale, or -1.
  int rank(std::string_view term) const;

  /// Parses {"name": ..., "terms": {"VB": [0,1,2], ...}}. Terms are ordered by
  /// peak, so the object's key order does not matter.
  static LinguisticScale from_json(std::string_view text);
  std::string to_json() const;

  friend bool operator==(const LinguisticScale &, const LinguisticScale &) = default;

 private:
  std::string name_;
  std::vector<ScaleEntry> entries_;
};

/// Nine performance terms on [0, 10], VB = (0,1,2) ... EG = (8,9,10).
const LinguisticScale &performance_scale();
/// Attribute-importance terms on [0, 1], VUI = (0,0.1,0.2) ... EI = (0.8,0.9,1).
const LinguisticScale &weight_scale();

}  // namespace sdss
