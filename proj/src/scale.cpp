#include "sdss/scale.h"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "sdss/error.h"

namespace sdss {

LinguisticScale::LinguisticScale(std::string name, std::vector<ScaleEntry> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto &e = entries_[i];
    if (e.term.empty()) throw DomainError("scale '" + name_ + "': empty term");
    if (!seen.insert(e.term).second) throw DomainError("scale '" + name_ + "': duplicate term " + e.term);
    make_tfn(e.tfn.a, e.tfn.b, e.tfn.c);
    if (i > 0 && !(entries_[i - 1].tfn.b < e.tfn.b)) {
      throw DomainError("scale '" + name_ + "': peaks must strictly increase at term " + e.term);
    }
  }
}

std::optional<Tfn> LinguisticScale::find(std::string_view term) const {
  for (const auto &e : entries_) {
    if (e.term == term) return e.tfn;
  }
  return std::nullopt;
}

int LinguisticScale::rank(std::string_view term) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].term == term) return static_cast<int>(i);
  }
  return -1;
}

LinguisticScale LinguisticScale::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw DomainError(std::string("scale JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("name") || !doc.contains("terms") || !doc["terms"].is_object()) {
    throw DomainError("scale JSON needs a string 'name' and an object 'terms'");
  }
  std::vector<ScaleEntry> entries;
  for (const auto &[term, triple] : doc["terms"].items()) {
    if (!triple.is_array() || triple.size() != 3) {
      throw DomainError("scale JSON: term " + term + " must map to [a, b, c]");
    }
    entries.push_back({term, make_tfn(triple[0].get<double>(), triple[1].get<double>(), triple[2].get<double>())});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ScaleEntry &x, const ScaleEntry &y) { return x.tfn.b < y.tfn.b; });
  return LinguisticScale(doc["name"].get<std::string>(), std::move(entries));
}

std::string LinguisticScale::to_json() const {
  nlohmann::ordered_json doc;
  doc["name"] = name_;
  doc["terms"] = nlohmann::ordered_json::object();
  for (const auto &e : entries_) doc["terms"][e.term] = {e.tfn.a, e.tfn.b, e.tfn.c};
  return doc.dump();
}

const LinguisticScale &performance_scale() {
  static const LinguisticScale scale("PERFORMANCE", {{"VB", {0, 1, 2}},
                                                     {"B", {1, 2, 3}},
                                                     {"MB", {2, 3, 4}},
                                                     {"M", {3, 4, 5}},
                                                     {"MG", {4, 5, 6}},
                                                     {"G", {5, 6, 7}},
                                                     {"VG", {6, 7, 8}},
                                                     {"VVG", {7, 8, 9}},
                                                     {"EG", {8, 9, 10}}});
  return scale;
}

// M, MI, I and VI are the only values that reproduce every aggregated weight
// row of the published case under min/mean/max aggregation.
const LinguisticScale &weight_scale() {
  static const LinguisticScale scale("WEIGHT", {{"VUI", {0.0, 0.1, 0.2}},
                                                {"UI", {0.1, 0.2, 0.3}},
                                                {"M", {0.3, 0.4, 0.5}},
                                                {"MI", {0.4, 0.5, 0.6}},
                                                {"I", {0.5, 0.6, 0.7}},
                                                {"VI", {0.6, 0.7, 0.8}},
                                                {"EI", {0.8, 0.9, 1.0}}});
  return scale;
}

}  // namespace sdss
