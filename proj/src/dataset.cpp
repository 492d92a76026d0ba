#include "sdss/dataset.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "sdss/error.h"
#include "sdss/json_util.h"

namespace sdss {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using jsonutil::num;
using jsonutil::read_num;

std::vector<std::string> Dataset::supplier_ids() const {
  std::vector<std::string> out;
  for (const auto &s : suppliers) out.push_back(s.id);
  return out;
}

const AttributeSpec *Dataset::find_attribute(const std::string &id) const {
  for (const auto &a : attributes) {
    if (a.attribute.id == id) return &a;
  }
  return nullptr;
}

std::string Violation::to_string() const {
  std::string out = table;
  if (row > 0) out += " row " + std::to_string(row);
  out += ": ";
  if (!cell.empty()) out += cell + ": ";
  return out + message;
}

namespace {

std::string coord(std::initializer_list<std::string> parts) {
  std::string out = "(";
  bool first = true;
  for (const auto &p : parts) {
    if (!first) out += ", ";
    out += p;
    first = false;
  }
  return out + ")";
}

bool is_quantitative(EvidenceKind k) { return k == EvidenceKind::temporal || k == EvidenceKind::granular; }

}  // namespace

std::vector<Violation> validate(const Dataset &ds) {
  std::vector<Violation> out;
  auto add = [&](std::string table, std::size_t row, std::string cell, std::string msg) {
    out.push_back({std::move(table), row, std::move(cell), std::move(msg)});
  };

  std::set<std::string> suppliers, attributes, dms;
  if (ds.suppliers.empty()) add("suppliers", 0, "", "at least one supplier is required");
  for (std::size_t i = 0; i < ds.suppliers.size(); ++i) {
    const auto &id = ds.suppliers[i].id;
    if (id.empty()) add("suppliers", i + 1, "", "empty supplier id");
    else if (!suppliers.insert(id).second) add("suppliers", i + 1, coord({id}), "duplicate supplier id");
  }
  if (ds.attributes.empty()) add("attributes", 0, "", "at least one attribute is required");
  for (std::size_t i = 0; i < ds.attributes.size(); ++i) {
    const auto &spec = ds.attributes[i];
    const auto &id = spec.attribute.id;
    if (id.empty()) add("attributes", i + 1, "", "empty attribute id");
    else if (!attributes.insert(id).second) add("attributes", i + 1, coord({id}), "duplicate attribute id");
    if (spec.classes) {
      if (spec.attribute.kind != EvidenceKind::granular) {
        add("attributes", i + 1, coord({id}), "a class count applies to granular attributes only");
      } else if (*spec.classes < 2) {
        add("attributes", i + 1, coord({id}), "class count must be at least 2");
      }
    }
  }
  if (ds.decision_makers.empty()) add("manifest", 0, "", "at least one decision maker is required");
  for (const auto &dm : ds.decision_makers) {
    if (dm.empty()) add("manifest", 0, "", "empty decision maker id");
    else if (!dms.insert(dm).second) add("manifest", 0, coord({dm}), "duplicate decision maker id");
  }

  auto kind_of = [&](const std::string &attr) -> std::optional<EvidenceKind> {
    if (const auto *a = ds.find_attribute(attr)) return a->attribute.kind;
    return std::nullopt;
  };

  // Appraisals: referential checks, then completeness of every linguistic grid.
  std::set<std::tuple<std::string, std::string, std::string>> seen_app;
  for (std::size_t i = 0; i < ds.appraisals.size(); ++i) {
    const auto &a = ds.appraisals[i];
    const auto cell = coord({a.supplier, a.attribute, a.dm});
    bool ok = true;
    if (!suppliers.count(a.supplier)) add("appraisals", i + 1, cell, "unknown supplier"), ok = false;
    if (!dms.count(a.dm)) add("appraisals", i + 1, cell, "unknown decision maker"), ok = false;
    const auto kind = kind_of(a.attribute);
    if (!kind) add("appraisals", i + 1, cell, "unknown attribute"), ok = false;
    else if (*kind != EvidenceKind::linguistic) add("appraisals", i + 1, cell, "attribute is not linguistic"), ok = false;
    if (!ds.performance.contains(a.term)) add("appraisals", i + 1, cell, "unknown term '" + a.term + "'"), ok = false;
    if (ok && !seen_app.emplace(a.supplier, a.attribute, a.dm).second) {
      add("appraisals", i + 1, cell, "duplicate appraisal");
    }
  }
  for (const auto &spec : ds.attributes) {
    if (spec.attribute.kind != EvidenceKind::linguistic) continue;
    for (const auto &s : ds.suppliers) {
      for (const auto &dm : ds.decision_makers) {
        if (!seen_app.count({s.id, spec.attribute.id, dm})) {
          add("appraisals", 0, coord({s.id, spec.attribute.id, dm}), "missing appraisal");
        }
      }
    }
  }

  std::set<std::pair<std::string, std::string>> seen_w;
  for (std::size_t i = 0; i < ds.weights.size(); ++i) {
    const auto &w = ds.weights[i];
    const auto cell = coord({w.attribute, w.dm});
    bool ok = true;
    if (!attributes.count(w.attribute)) add("weights", i + 1, cell, "unknown attribute"), ok = false;
    if (!dms.count(w.dm)) add("weights", i + 1, cell, "unknown decision maker"), ok = false;
    if (!ds.weight.contains(w.term)) add("weights", i + 1, cell, "unknown term '" + w.term + "'"), ok = false;
    if (ok && !seen_w.emplace(w.attribute, w.dm).second) add("weights", i + 1, cell, "duplicate weight judgment");
  }
  for (const auto &spec : ds.attributes) {
    for (const auto &dm : ds.decision_makers) {
      if (!seen_w.count({spec.attribute.id, dm})) add("weights", 0, coord({spec.attribute.id, dm}), "missing weight judgment");
    }
  }

  std::set<std::pair<std::string, std::string>> raw_cells, override_cells;
  auto check_cell = [&](const char *table, std::size_t row, const std::string &supplier, const std::string &attr,
                        std::optional<EvidenceKind> expected) {
    const auto cell = coord({supplier, attr});
    bool ok = true;
    if (!suppliers.count(supplier)) add(table, row, cell, "unknown supplier"), ok = false;
    const auto kind = kind_of(attr);
    if (!kind) {
      add(table, row, cell, "unknown attribute");
      ok = false;
    } else if (expected && *kind != *expected) {
      add(table, row, cell, std::string("attribute is not ") + to_string(*expected));
      ok = false;
    } else if (!expected && !is_quantitative(*kind)) {
      add(table, row, cell, "overrides apply to temporal or granular attributes only");
      ok = false;
    }
    return ok;
  };
  for (std::size_t i = 0; i < ds.series.size(); ++i) {
    const auto &s = ds.series[i];
    if (!check_cell("series", i + 1, s.supplier, s.attribute, EvidenceKind::temporal)) continue;
    const auto cell = coord({s.supplier, s.attribute});
    if (!raw_cells.emplace(s.supplier, s.attribute).second) add("series", i + 1, cell, "duplicate series");
    if (s.values.size() < 3) add("series", i + 1, cell, "a series needs at least 3 observations");
    if (std::any_of(s.values.begin(), s.values.end(), [](double v) { return !std::isfinite(v); })) {
      add("series", i + 1, cell, "non-finite observation");
    }
  }
  for (std::size_t i = 0; i < ds.ranges.size(); ++i) {
    const auto &r = ds.ranges[i];
    if (!check_cell("ranges", i + 1, r.supplier, r.attribute, EvidenceKind::granular)) continue;
    const auto cell = coord({r.supplier, r.attribute});
    if (!raw_cells.emplace(r.supplier, r.attribute).second) add("ranges", i + 1, cell, "duplicate range set");
    if (r.ranges.empty()) add("ranges", i + 1, cell, "empty range set");
    for (const auto &g : r.ranges) {
      if (!std::isfinite(g.p) || !std::isfinite(g.q) || g.p > g.q) {
        add("ranges", i + 1, cell, "range [" + num(g.p) + ", " + num(g.q) + "] needs p <= q");
      }
    }
  }
  for (std::size_t i = 0; i < ds.overrides.size(); ++i) {
    const auto &o = ds.overrides[i];
    if (!check_cell("tfn_overrides", i + 1, o.supplier, o.attribute, std::nullopt)) continue;
    const auto cell = coord({o.supplier, o.attribute});
    if (!override_cells.emplace(o.supplier, o.attribute).second) add("tfn_overrides", i + 1, cell, "duplicate override");
    if (!o.tfn.valid()) add("tfn_overrides", i + 1, cell, "override is not a valid TFN");
  }
  for (const auto &spec : ds.attributes) {
    if (!is_quantitative(spec.attribute.kind)) continue;
    const char *table = spec.attribute.kind == EvidenceKind::temporal ? "series" : "ranges";
    for (const auto &s : ds.suppliers) {
      const std::pair key{s.id, spec.attribute.id};
      if (ds.config.from_raw ? !raw_cells.count(key) : !raw_cells.count(key) && !override_cells.count(key)) {
        add(table, 0, coord({s.id, spec.attribute.id}),
            ds.config.from_raw ? "no raw evidence for this cell" : "no evidence or override for this cell");
      }
    }
  }

  const auto &cfg = ds.config;
  if (cfg.frame_classes < 2) add("config", 0, "", "frame.classes must be at least 2");
  if (!(cfg.scri_step > 0.0 && cfg.scri_step <= 0.5)) add("config", 0, "", "scriStep must lie in (0, 0.5]");
  if (cfg.reliability.samples < 1) add("config", 0, "", "reliability.samples must be at least 1");
  if (cfg.bins && *cfg.bins < 2) add("config", 0, "", "temporal.bins must be at least 2");

  if (ds.mcgp) {
    const auto &m = *ds.mcgp;
    std::set<std::string> ids;
    for (std::size_t k = 0; k < m.model.suppliers.size(); ++k) {
      const auto &id = m.model.suppliers[k].id;
      if (!suppliers.count(id)) add("mcgp", k + 1, coord({id}), "unknown supplier");
      if (!ids.insert(id).second) add("mcgp", k + 1, coord({id}), "duplicate supplier");
    }
    for (const auto &id : suppliers) {
      if (!ids.count(id)) add("mcgp", 0, coord({id}), "supplier missing from the MCGP model");
    }
    try {
      m.model.validate();
    } catch (const DomainError &e) {
      add("mcgp", 0, "", e.what());
    }
    const auto n = m.model.suppliers.size();
    if (m.reference_plan && m.reference_plan->size() != n) add("mcgp", 0, "", "referencePlan needs one quantity per supplier");
    for (const auto &[name, values] : m.coefficient_sets) {
      if (values.size() != n) add("mcgp", 0, coord({name}), "coefficient set needs one value per supplier");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON forms

ordered_json config_to_json(const PipelineConfig &c) {
  ordered_json j;
  j["frame"] = {{"classes", c.frame_classes}};
  j["distanceVariant"] = to_string(c.distance);
  j["reliability"] = {{"mode", c.reliability.mode == SampleMode::midpoint_mean ? "midpoint-mean" : "seeded-uniform"},
                      {"samples", c.reliability.samples},
                      {"seed", c.reliability.seed}};
  ordered_json temporal;
  temporal["fit"] = c.fit == TriangleFit::lsq ? "lsq" : "mode";
  temporal["bins"] = c.bins ? ordered_json(*c.bins) : ordered_json(nullptr);
  j["temporal"] = temporal;
  j["fromRaw"] = c.from_raw;
  j["scriStep"] = num(c.scri_step);
  j["mcgp"] = {{"mode", to_string(c.lead_mode)}, {"integerize", c.integerize}};
  return j;
}

namespace {

void reject_unknown(const json &j, std::initializer_list<const char *> keys, const std::string &where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char *k) { return it.key() == k; })) {
      throw DomainError("unknown config key " + where + it.key());
    }
  }
}

template <class T>
T get_int(const json &j, const std::string &what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw DomainError(what + " must be an integer");
  return j.get<T>();
}

}  // namespace

PipelineConfig config_from_json(const json &j, PipelineConfig c) {
  if (!j.is_object()) throw DomainError("config must be an object");
  reject_unknown(j, {"frame", "distanceVariant", "reliability", "temporal", "fromRaw", "scriStep", "mcgp"}, "");
  if (j.contains("frame")) {
    reject_unknown(j["frame"], {"classes"}, "frame.");
    if (j["frame"].contains("classes")) c.frame_classes = get_int<int>(j["frame"]["classes"], "frame.classes");
  }
  if (j.contains("distanceVariant")) {
    auto v = parse_distance_variant(j["distanceVariant"].get<std::string>());
    if (!v) throw DomainError("distanceVariant must be paper or per_attribute");
    c.distance = *v;
  }
  if (j.contains("reliability")) {
    const auto &r = j["reliability"];
    reject_unknown(r, {"mode", "samples", "seed"}, "reliability.");
    if (r.contains("mode")) {
      const auto mode = r["mode"].get<std::string>();
      if (mode == "midpoint-mean") c.reliability.mode = SampleMode::midpoint_mean;
      else if (mode == "seeded-uniform") c.reliability.mode = SampleMode::seeded_uniform;
      else throw DomainError("reliability.mode must be midpoint-mean or seeded-uniform");
    }
    if (r.contains("samples")) c.reliability.samples = get_int<std::size_t>(r["samples"], "reliability.samples");
    if (r.contains("seed")) c.reliability.seed = get_int<std::uint64_t>(r["seed"], "reliability.seed");
  }
  if (j.contains("temporal")) {
    const auto &t = j["temporal"];
    reject_unknown(t, {"fit", "bins"}, "temporal.");
    if (t.contains("fit")) {
      const auto fit = t["fit"].get<std::string>();
      if (fit == "lsq") c.fit = TriangleFit::lsq;
      else if (fit == "mode") c.fit = TriangleFit::mode;
      else throw DomainError("temporal.fit must be lsq or mode");
    }
    if (t.contains("bins")) {
      if (t["bins"].is_null()) c.bins.reset();
      else c.bins = get_int<std::size_t>(t["bins"], "temporal.bins");
    }
  }
  if (j.contains("fromRaw")) c.from_raw = j["fromRaw"].get<bool>();
  if (j.contains("scriStep")) c.scri_step = read_num(j["scriStep"], "scriStep");
  if (j.contains("mcgp")) {
    const auto &m = j["mcgp"];
    reject_unknown(m, {"mode", "integerize"}, "mcgp.");
    if (m.contains("mode")) {
      auto mode = parse_lead_mode(m["mode"].get<std::string>());
      if (!mode) throw DomainError("mcgp.mode must be fixed_total or iterative");
      c.lead_mode = *mode;
    }
    if (m.contains("integerize")) c.integerize = m["integerize"].get<bool>();
  }
  return c;
}

namespace {

ordered_json aspiration_json(const Aspiration &a) {
  return {{"anchor", num(a.anchor)}, {"min", num(a.min)}, {"max", num(a.max)}};
}

Aspiration read_aspiration(const json &j, const std::string &what) {
  if (!j.is_object()) throw DomainError(what + " must be an object");
  return {read_num(j.at("anchor"), what + ".anchor"), read_num(j.at("min"), what + ".min"),
          read_num(j.at("max"), what + ".max")};
}

ordered_json num_array(const std::vector<double> &v) {
  auto out = ordered_json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

std::vector<double> read_num_array(const json &j, const std::string &what) {
  if (!j.is_array()) throw DomainError(what + " must be an array");
  std::vector<double> out;
  for (const auto &x : j) out.push_back(read_num(x, what));
  return out;
}

}  // namespace

ordered_json mcgp_to_json(const McgpSpec &spec) {
  ordered_json j;
  auto suppliers = ordered_json::array();
  for (const auto &s : spec.model.suppliers) {
    suppliers.push_back({{"id", s.id}, {"coeff", num(s.coeff)}, {"unitCost", num(s.unit_cost)}, {"leadTime", num(s.lead_time)}});
  }
  j["suppliers"] = suppliers;
  j["goals"] = {{"tvpFloor", num(spec.model.tvp_floor)},
                {"budget", aspiration_json(spec.model.budget)},
                {"lead", aspiration_json(spec.model.lead)},
                {"quantity", num(spec.model.quantity)}};
  const auto &w = spec.model.weights;
  j["goalWeights"] = {{"d", num_array({w.d.begin(), w.d.end()})}, {"e", num_array({w.e.begin(), w.e.end()})}};
  j["coefficientSource"] = spec.source == CoefficientSource::ranking ? "ranking" : "model";
  ordered_json sets = ordered_json::object();
  for (const auto &[name, values] : spec.coefficient_sets) sets[name] = num_array(values);
  j["coefficientSets"] = sets;
  j["referencePlan"] = spec.reference_plan ? num_array(*spec.reference_plan) : ordered_json(nullptr);
  j["note"] = spec.note;
  return j;
}

McgpSpec mcgp_from_json(const json &j) {
  if (!j.is_object()) throw DomainError("MCGP document must be an object");
  McgpSpec spec;
  try {
    for (const auto &s : j.at("suppliers")) {
      const auto id = s.at("id").get<std::string>();
      spec.model.suppliers.push_back({id, read_num(s.at("coeff"), id + ".coeff"),
                                      read_num(s.at("unitCost"), id + ".unitCost"),
                                      read_num(s.at("leadTime"), id + ".leadTime")});
    }
    const auto &g = j.at("goals");
    spec.model.tvp_floor = read_num(g.at("tvpFloor"), "goals.tvpFloor");
    spec.model.budget = read_aspiration(g.at("budget"), "goals.budget");
    spec.model.lead = read_aspiration(g.at("lead"), "goals.lead");
    spec.model.quantity = read_num(g.at("quantity"), "goals.quantity");
    if (j.contains("goalWeights") && !j["goalWeights"].is_null()) {
      const auto &w = j["goalWeights"];
      if (w.contains("d")) {
        const auto d = read_num_array(w["d"], "goalWeights.d");
        if (d.size() != 4) throw DomainError("goalWeights.d needs 4 values");
        std::copy(d.begin(), d.end(), spec.model.weights.d.begin());
      }
      if (w.contains("e")) {
        const auto e = read_num_array(w["e"], "goalWeights.e");
        if (e.size() != 2) throw DomainError("goalWeights.e needs 2 values");
        std::copy(e.begin(), e.end(), spec.model.weights.e.begin());
      }
    }
    if (j.contains("coefficientSource")) {
      const auto src = j["coefficientSource"].get<std::string>();
      if (src == "model") spec.source = CoefficientSource::model;
      else if (src == "ranking") spec.source = CoefficientSource::ranking;
      else throw DomainError("coefficientSource must be model or ranking");
    }
    if (j.contains("coefficientSets")) {
      for (const auto &[name, values] : j["coefficientSets"].items()) {
        spec.coefficient_sets[name] = read_num_array(values, "coefficientSets." + name);
      }
    }
    if (j.contains("referencePlan") && !j["referencePlan"].is_null()) {
      spec.reference_plan = read_num_array(j["referencePlan"], "referencePlan");
    }
    if (j.contains("note")) spec.note = j["note"].get<std::string>();
  } catch (const json::exception &e) {
    throw DomainError(std::string("malformed MCGP document: ") + e.what());
  }
  return spec;
}

namespace {

ordered_json attribute_json(const AttributeSpec &spec) {
  const auto &a = spec.attribute;
  ordered_json j{{"id", a.id},
                 {"name", a.name},
                 {"kind", to_string(a.kind)},
                 {"objective", to_string(a.objective)},
                 {"group", to_string(a.group)}};
  if (spec.classes) j["classes"] = *spec.classes;
  return j;
}

AttributeSpec parse_attribute(const std::string &id, const std::string &name, const std::string &kind,
                              const std::string &objective, const std::string &group, const std::string &where) {
  AttributeSpec spec;
  spec.attribute.id = id;
  spec.attribute.name = name;
  auto k = parse_evidence_kind(kind);
  if (!k) throw DomainError(where + ": kind must be temporal, granular or linguistic");
  auto o = parse_objective(objective);
  if (!o) throw DomainError(where + ": objective must be max or min");
  auto g = parse_group(group);
  if (!g) throw DomainError(where + ": group must be resilience or cost");
  spec.attribute.kind = *k;
  spec.attribute.objective = *o;
  spec.attribute.group = *g;
  return spec;
}

LinguisticScale parse_scale(const json &j) { return LinguisticScale::from_json(j.dump()); }

void apply_manifest_common(const json &doc, Dataset &ds, std::vector<Violation> &violations, const char *table) {
  if (!doc.contains("schemaVersion")) throw IoError(std::string(table) + ": schemaVersion is missing");
  const auto &v = doc["schemaVersion"];
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
    throw IoError("unsupported schema version " + v.dump() + " (expected " + std::to_string(kSchemaVersion) + ")");
  }
  ds.name = doc.value("name", "");
  try {
    if (doc.contains("decisionMakers")) ds.decision_makers = doc["decisionMakers"].get<std::vector<std::string>>();
  } catch (const json::exception &e) {
    violations.push_back({table, 0, "", std::string("decisionMakers: ") + e.what()});
  }
  if (doc.contains("scales")) {
    try {
      const auto &s = doc["scales"];
      if (s.contains("performance")) ds.performance = parse_scale(s["performance"]);
      if (s.contains("weight")) ds.weight = parse_scale(s["weight"]);
    } catch (const std::exception &e) {
      violations.push_back({table, 0, "", std::string("scales: ") + e.what()});
    }
  }
  if (doc.contains("config")) {
    try {
      ds.config = config_from_json(doc["config"]);
    } catch (const std::exception &e) {
      violations.push_back({table, 0, "", std::string("config: ") + e.what()});
    }
  }
}

// Row-level parse failures become violations; the offending row is dropped.
template <class Body>
void guarded(std::vector<Violation> &violations, const char *table, std::size_t row, Body body) {
  try {
    body();
  } catch (const DomainError &e) {
    violations.push_back({table, row, "", e.what()});
  } catch (const json::exception &e) {
    violations.push_back({table, row, "", e.what()});
  }
}

}  // namespace

ordered_json dataset_to_document(const Dataset &ds) {
  ordered_json j;
  j["schemaVersion"] = kSchemaVersion;
  j["name"] = ds.name;
  auto suppliers = ordered_json::array();
  for (const auto &s : ds.suppliers) suppliers.push_back({{"id", s.id}, {"name", s.name}});
  j["suppliers"] = suppliers;
  j["decisionMakers"] = ds.decision_makers;
  auto attributes = ordered_json::array();
  for (const auto &a : ds.attributes) attributes.push_back(attribute_json(a));
  j["attributes"] = attributes;
  auto appraisals = ordered_json::array();
  for (const auto &a : ds.appraisals) {
    appraisals.push_back({{"supplier", a.supplier}, {"attribute", a.attribute}, {"dm", a.dm}, {"term", a.term}});
  }
  j["appraisals"] = appraisals;
  auto weights = ordered_json::array();
  for (const auto &w : ds.weights) weights.push_back({{"attribute", w.attribute}, {"dm", w.dm}, {"term", w.term}});
  j["weights"] = weights;
  auto series = ordered_json::array();
  for (const auto &s : ds.series) {
    series.push_back({{"supplier", s.supplier}, {"attribute", s.attribute}, {"values", num_array(s.values)}});
  }
  j["series"] = series;
  auto ranges = ordered_json::array();
  for (const auto &r : ds.ranges) {
    auto list = ordered_json::array();
    for (const auto &g : r.ranges) list.push_back({num(g.p), num(g.q)});
    ranges.push_back({{"supplier", r.supplier}, {"attribute", r.attribute}, {"ranges", list}});
  }
  j["ranges"] = ranges;
  auto overrides = ordered_json::array();
  for (const auto &o : ds.overrides) {
    overrides.push_back({{"supplier", o.supplier}, {"attribute", o.attribute}, {"tfn", jsonutil::tfn(o.tfn)}});
  }
  j["tfnOverrides"] = overrides;
  j["scales"] = {{"performance", ordered_json::parse(ds.performance.to_json())},
                 {"weight", ordered_json::parse(ds.weight.to_json())}};
  j["config"] = config_to_json(ds.config);
  j["mcgp"] = ds.mcgp ? mcgp_to_json(*ds.mcgp) : ordered_json(nullptr);
  return j;
}

LoadResult dataset_from_document(const json &doc) {
  if (!doc.is_object()) throw IoError("dataset document must be a JSON object");
  LoadResult res;
  auto &ds = res.dataset;
  auto &v = res.violations;
  apply_manifest_common(doc, ds, v, "manifest");
  auto each = [&](const char *key, const char *table, auto body) {
    if (!doc.contains(key)) return;
    const auto &arr = doc[key];
    if (!arr.is_array()) {
      v.push_back({table, 0, "", std::string(key) + " must be an array"});
      return;
    }
    for (std::size_t i = 0; i < arr.size(); ++i) guarded(v, table, i + 1, [&] { body(arr[i], i + 1); });
  };
  each("suppliers", "suppliers", [&](const json &s, std::size_t) {
    ds.suppliers.push_back({s.at("id").get<std::string>(), s.value("name", "")});
  });
  each("attributes", "attributes", [&](const json &a, std::size_t row) {
    auto spec = parse_attribute(a.at("id").get<std::string>(), a.value("name", ""), a.at("kind").get<std::string>(),
                                a.at("objective").get<std::string>(), a.at("group").get<std::string>(),
                                "attribute row " + std::to_string(row));
    if (a.contains("classes") && !a["classes"].is_null()) spec.classes = a["classes"].get<int>();
    ds.attributes.push_back(std::move(spec));
  });
  each("appraisals", "appraisals", [&](const json &a, std::size_t) {
    ds.appraisals.push_back({a.at("supplier").get<std::string>(), a.at("attribute").get<std::string>(),
                             a.at("dm").get<std::string>(), a.at("term").get<std::string>()});
  });
  each("weights", "weights", [&](const json &w, std::size_t) {
    ds.weights.push_back({w.at("attribute").get<std::string>(), w.at("dm").get<std::string>(), w.at("term").get<std::string>()});
  });
  each("series", "series", [&](const json &s, std::size_t) {
    ds.series.push_back({s.at("supplier").get<std::string>(), s.at("attribute").get<std::string>(),
                         read_num_array(s.at("values"), "values")});
  });
  each("ranges", "ranges", [&](const json &r, std::size_t) {
    RangeEntry e{r.at("supplier").get<std::string>(), r.at("attribute").get<std::string>(), {}};
    for (const auto &g : r.at("ranges")) {
      if (!g.is_array() || g.size() != 2) throw DomainError("each range must be [p, q]");
      e.ranges.push_back({read_num(g[0], "p"), read_num(g[1], "q")});
    }
    ds.ranges.push_back(std::move(e));
  });
  each("tfnOverrides", "tfn_overrides", [&](const json &o, std::size_t) {
    const auto &t = o.at("tfn");
    if (!t.is_array() || t.size() != 3) throw DomainError("tfn must be [a, b, c]");
    ds.overrides.push_back({o.at("supplier").get<std::string>(), o.at("attribute").get<std::string>(),
                            Tfn{read_num(t[0], "a"), read_num(t[1], "b"), read_num(t[2], "c")}});
  });
  if (doc.contains("mcgp") && !doc["mcgp"].is_null()) {
    guarded(v, "mcgp", 0, [&] { ds.mcgp = mcgp_from_json(doc["mcgp"]); });
  }
  auto more = validate(ds);
  v.insert(v.end(), more.begin(), more.end());
  return res;
}

// ---------------------------------------------------------------------------
// Bundle directories

namespace {

struct CsvTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string &col) const {
    auto it = std::find(header.begin(), header.end(), col);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  }
};

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  out.push_back(std::move(field));
  for (auto &f : out) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

std::string read_text(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<CsvTable> read_csv(const fs::path &dir, const std::string &name) {
  const auto path = dir / name;
  if (!fs::exists(path)) return std::nullopt;
  const auto text = read_text(path);
  CsvTable t;
  t.name = name;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (header) {
      t.header = split_csv_line(line);
      header = false;
    } else {
      t.rows.push_back(split_csv_line(line));
    }
  }
  return t;
}

double parse_double(const std::string &s, const std::string &what) {
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) throw DomainError(what + " '" + s + "' is not a number");
  return v;
}

// Calls body(fields) for each row, with columns resolved by header name.
template <class Body>
void for_rows(const std::optional<CsvTable> &t, std::initializer_list<const char *> required,
              std::initializer_list<const char *> optional, std::vector<Violation> &v, Body body) {
  if (!t) return;
  std::vector<int> idx;
  for (const char *col : required) {
    const int c = t->column(col);
    if (c < 0) {
      v.push_back({t->name, 0, "", std::string("missing column ") + col});
      return;
    }
    idx.push_back(c);
  }
  for (const char *col : optional) idx.push_back(t->column(col));
  for (std::size_t r = 0; r < t->rows.size(); ++r) {
    const auto &row = t->rows[r];
    if (row.size() != t->header.size()) {
      v.push_back({t->name, r + 1, "", "expected " + std::to_string(t->header.size()) + " fields"});
      continue;
    }
    std::vector<std::string> fields;
    for (int c : idx) fields.push_back(c < 0 ? std::string() : row[static_cast<std::size_t>(c)]);
    try {
      body(fields, r + 1);
    } catch (const DomainError &e) {
      v.push_back({t->name, r + 1, "", e.what()});
    }
  }
}

json read_json_file(const fs::path &p) {
  try {
    return json::parse(read_text(p));
  } catch (const json::parse_error &e) {
    throw IoError(p.filename().string() + ": " + e.what());
  }
}

}  // namespace

LoadResult load_bundle(const fs::path &dir) {
  if (!fs::is_directory(dir)) throw IoError("not a dataset bundle directory: " + dir.string());
  const auto manifest_path = dir / "manifest.json";
  if (!fs::exists(manifest_path)) throw IoError("missing manifest.json in " + dir.string());
  const auto manifest = read_json_file(manifest_path);
  if (!manifest.is_object()) throw IoError("manifest.json must be a JSON object");

  LoadResult res;
  auto &ds = res.dataset;
  auto &v = res.violations;
  apply_manifest_common(manifest, ds, v, "manifest.json");

  if (!fs::exists(dir / "suppliers.csv")) v.push_back({"suppliers.csv", 0, "", "file is missing"});
  if (!fs::exists(dir / "attributes.csv")) v.push_back({"attributes.csv", 0, "", "file is missing"});

  for_rows(read_csv(dir, "suppliers.csv"), {"id"}, {"name"}, v,
           [&](const auto &f, std::size_t) { ds.suppliers.push_back({f[0], f[1]}); });
  for_rows(read_csv(dir, "attributes.csv"), {"id", "kind", "objective", "group"}, {"name", "classes"}, v,
           [&](const auto &f, std::size_t row) {
             auto spec = parse_attribute(f[0], f[4], f[1], f[2], f[3], "attributes.csv row " + std::to_string(row));
             if (!f[5].empty()) spec.classes = static_cast<int>(parse_double(f[5], "classes"));
             ds.attributes.push_back(std::move(spec));
           });
  for_rows(read_csv(dir, "appraisals.csv"), {"supplier", "attribute", "dm", "term"}, {}, v,
           [&](const auto &f, std::size_t) { ds.appraisals.push_back({f[0], f[1], f[2], f[3]}); });
  for_rows(read_csv(dir, "weights.csv"), {"attribute", "dm", "term"}, {}, v,
           [&](const auto &f, std::size_t) { ds.weights.push_back({f[0], f[1], f[2]}); });

  // Series and ranges arrive one observation per row; group them per cell in
  // order of first appearance and sort by the index column.
  {
    std::vector<std::pair<std::pair<std::string, std::string>, std::vector<std::pair<double, double>>>> cells;
    std::map<std::pair<std::string, std::string>, std::size_t> where;
    for_rows(read_csv(dir, "series.csv"), {"supplier", "attribute", "t", "value"}, {}, v,
             [&](const auto &f, std::size_t) {
               const double t = parse_double(f[2], "t");
               const double value = parse_double(f[3], "value");
               const std::pair key{f[0], f[1]};
               auto [it, fresh] = where.emplace(key, cells.size());
               if (fresh) cells.push_back({key, {}});
               cells[it->second].second.emplace_back(t, value);
             });
    for (auto &[key, obs] : cells) {
      std::stable_sort(obs.begin(), obs.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
      SeriesEntry e{key.first, key.second, {}};
      for (std::size_t k = 0; k < obs.size(); ++k) {
        if (k > 0 && obs[k].first == obs[k - 1].first) {
          v.push_back({"series.csv", 0, coord({key.first, key.second}), "duplicate t " + num(obs[k].first)});
        }
        e.values.push_back(obs[k].second);
      }
      ds.series.push_back(std::move(e));
    }
  }
  {
    std::vector<std::pair<std::pair<std::string, std::string>, std::vector<std::pair<double, Range>>>> cells;
    std::map<std::pair<std::string, std::string>, std::size_t> where;
    for_rows(read_csv(dir, "ranges.csv"), {"supplier", "attribute", "range_index", "p", "q"}, {}, v,
             [&](const auto &f, std::size_t) {
               const double idx = parse_double(f[2], "range_index");
               const Range r{parse_double(f[3], "p"), parse_double(f[4], "q")};
               const std::pair key{f[0], f[1]};
               auto [it, fresh] = where.emplace(key, cells.size());
               if (fresh) cells.push_back({key, {}});
               cells[it->second].second.emplace_back(idx, r);
             });
    for (auto &[key, rs] : cells) {
      std::stable_sort(rs.begin(), rs.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
      RangeEntry e{key.first, key.second, {}};
      for (const auto &r : rs) e.ranges.push_back(r.second);
      ds.ranges.push_back(std::move(e));
    }
  }
  for_rows(read_csv(dir, "tfn_overrides.csv"), {"supplier", "attribute", "a", "b", "c"}, {}, v,
           [&](const auto &f, std::size_t) {
             ds.overrides.push_back({f[0], f[1], Tfn{parse_double(f[2], "a"), parse_double(f[3], "b"), parse_double(f[4], "c")}});
           });
  if (fs::exists(dir / "mcgp.json")) {
    const auto doc = read_json_file(dir / "mcgp.json");
    guarded(v, "mcgp.json", 0, [&] { ds.mcgp = mcgp_from_json(doc); });
  }

  auto more = validate(ds);
  for (auto &m : more) {
    static const std::map<std::string, std::string> files{
        {"suppliers", "suppliers.csv"}, {"attributes", "attributes.csv"}, {"appraisals", "appraisals.csv"},
        {"weights", "weights.csv"},     {"series", "series.csv"},         {"ranges", "ranges.csv"},
        {"tfn_overrides", "tfn_overrides.csv"}, {"mcgp", "mcgp.json"},     {"manifest", "manifest.json"},
        {"config", "manifest.json"}};
    if (auto it = files.find(m.table); it != files.end()) m.table = it->second;
    // Series and ranges rows are regrouped per cell, so their row numbers do not map back to the file.
    if (m.table == "series.csv" || m.table == "ranges.csv") m.row = 0;
    v.push_back(std::move(m));
  }
  return res;
}

LoadResult load_dataset(const fs::path &path) {
  if (!fs::exists(path)) throw IoError("no such file or directory: " + path.string());
  if (fs::is_directory(path)) return load_bundle(path);
  return dataset_from_document(read_json_file(path));
}

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_text(const fs::path &p, const std::string &text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  out << text;
  if (!out) throw IoError("failed writing " + p.string());
}

}  // namespace

void save_bundle(const Dataset &ds, const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  ordered_json manifest;
  manifest["schemaVersion"] = kSchemaVersion;
  manifest["name"] = ds.name;
  manifest["decisionMakers"] = ds.decision_makers;
  if (!(ds.performance == performance_scale() && ds.weight == weight_scale())) {
    manifest["scales"] = {{"performance", ordered_json::parse(ds.performance.to_json())},
                          {"weight", ordered_json::parse(ds.weight.to_json())}};
  }
  manifest["config"] = config_to_json(ds.config);
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");

  std::string s = "id,name\n";
  for (const auto &x : ds.suppliers) s += csv_field(x.id) + "," + csv_field(x.name) + "\n";
  write_text(dir / "suppliers.csv", s);

  s = "id,name,kind,objective,group,classes\n";
  for (const auto &a : ds.attributes) {
    s += csv_field(a.attribute.id) + "," + csv_field(a.attribute.name) + "," + to_string(a.attribute.kind) + "," +
         to_string(a.attribute.objective) + "," + to_string(a.attribute.group) + "," +
         (a.classes ? std::to_string(*a.classes) : std::string()) + "\n";
  }
  write_text(dir / "attributes.csv", s);

  s = "supplier,attribute,dm,term\n";
  for (const auto &a : ds.appraisals) s += a.supplier + "," + a.attribute + "," + a.dm + "," + a.term + "\n";
  write_text(dir / "appraisals.csv", s);

  s = "attribute,dm,term\n";
  for (const auto &w : ds.weights) s += w.attribute + "," + w.dm + "," + w.term + "\n";
  write_text(dir / "weights.csv", s);

  s = "supplier,attribute,t,value\n";
  for (const auto &e : ds.series) {
    for (std::size_t k = 0; k < e.values.size(); ++k) {
      s += e.supplier + "," + e.attribute + "," + std::to_string(k + 1) + "," + num(e.values[k]) + "\n";
    }
  }
  write_text(dir / "series.csv", s);

  s = "supplier,attribute,range_index,p,q\n";
  for (const auto &e : ds.ranges) {
    for (std::size_t k = 0; k < e.ranges.size(); ++k) {
      s += e.supplier + "," + e.attribute + "," + std::to_string(k + 1) + "," + num(e.ranges[k].p) + "," +
           num(e.ranges[k].q) + "\n";
    }
  }
  write_text(dir / "ranges.csv", s);

  s = "supplier,attribute,a,b,c\n";
  for (const auto &o : ds.overrides) {
    s += o.supplier + "," + o.attribute + "," + num(o.tfn.a) + "," + num(o.tfn.b) + "," + num(o.tfn.c) + "\n";
  }
  write_text(dir / "tfn_overrides.csv", s);

  if (ds.mcgp) {
    write_text(dir / "mcgp.json", mcgp_to_json(*ds.mcgp).dump(2) + "\n");
  } else if (fs::exists(dir / "mcgp.json")) {
    fs::remove(dir / "mcgp.json");
  }
}

}  // namespace sdss
