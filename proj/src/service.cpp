#include "sdss/service.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "sdss/error.h"
#include "sdss/json_util.h"

namespace sdss {

using nlohmann::json;
using nlohmann::ordered_json;

std::string HttpRequest::header(const std::string &lower_name) const {
  auto it = headers.find(lower_name);
  return it == headers.end() ? std::string() : it->second;
}

namespace {

constexpr const char *kJson = "application/json";
constexpr const char *kCsv = "text/csv";

HttpResponse json_response(int status, const ordered_json &body) {
  HttpResponse r;
  r.status = status;
  r.headers["Content-Type"] = kJson;
  r.body = body.dump(2) + "\n";
  return r;
}

HttpResponse error_response(int status, const std::string &message) {
  ordered_json body;
  body["error"] = {{"status", status}, {"message", message}};
  return json_response(status, body);
}

ordered_json violations_json(const std::vector<Violation> &violations) {
  auto out = ordered_json::array();
  for (const auto &v : violations) {
    out.push_back({{"table", v.table}, {"row", v.row}, {"cell", v.cell}, {"message", v.message}});
  }
  return out;
}

HttpResponse unprocessable(const std::string &message, const std::vector<Violation> &violations = {}) {
  ordered_json body;
  body["error"] = {{"status", 422}, {"message", message}};
  body["violations"] = violations_json(violations);
  return json_response(422, body);
}

std::vector<std::string> split_path(const std::string &path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    const auto j = path.find('/', i);
    const auto end = j == std::string::npos ? path.size() : j;
    if (end > i) parts.push_back(path.substr(i, end - i));
    i = end;
  }
  return parts;
}

// Picks JSON or CSV from the Accept header in listed order; q-values are
// ignored. Returns an empty string when nothing offered is acceptable.
std::string negotiate(const std::string &accept, bool csv_allowed) {
  if (accept.empty()) return kJson;
  std::size_t pos = 0;
  while (pos <= accept.size()) {
    auto end = accept.find(',', pos);
    if (end == std::string::npos) end = accept.size();
    auto item = accept.substr(pos, end - pos);
    item = item.substr(0, item.find(';'));
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    std::transform(item.begin(), item.end(), item.begin(), [](unsigned char c) { return std::tolower(c); });
    if (item == kJson || item == "application/*" || item == "*/*") return kJson;
    if (csv_allowed && (item == kCsv || item == "text/*")) return kCsv;
    pos = end + 1;
  }
  return {};
}

std::optional<double> parse_query_number(const std::string &s) {
  double v = 0.0;
  const auto *end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string strip_etag(std::string tag) {
  if (tag.rfind("W/", 0) == 0) tag = tag.substr(2);
  if (tag.size() >= 2 && tag.front() == '"' && tag.back() == '"') tag = tag.substr(1, tag.size() - 2);
  return tag;
}

ordered_json stage_hashes(const Session &s) {
  const auto artifacts = artifacts_to_json(s.artifacts);
  return {{"dataset", json_hash(dataset_to_document(s.dataset))},
          {"evidence", json_hash(artifacts["evidence"])},
          {"ranking", json_hash(artifacts["ranking"])},
          {"allocation", json_hash(artifacts["allocation"])},
          {"artifacts", json_hash(artifacts)}};
}

std::string make_etag(std::uint64_t revision, const Session &s) {
  return "r" + std::to_string(revision) + "-" + json_hash(artifacts_to_json(s.artifacts)).substr(0, 16);
}

ordered_json session_summary(const std::string &id, std::uint64_t revision, const std::string &etag,
                             const Session &s) {
  ordered_json j;
  j["id"] = id;
  j["revision"] = revision;
  j["etag"] = etag;
  j["hashes"] = stage_hashes(s);
  j["order"] = s.artifacts.ranking.all.order();
  j["warnings"] = s.artifacts.ranking.warnings;
  return j;
}

json parse_body(const std::string &body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error &e) {
    throw IoError(std::string("request body is not JSON: ") + e.what());
  }
}

// Accepts either a bare array of changes or {"changes": [...]}.
const json &changes_of(const json &body) {
  if (body.is_array()) return body;
  if (body.is_object() && body.contains("changes") && body["changes"].is_array()) return body["changes"];
  throw IoError("expected an array of changes or an object with a \"changes\" array");
}

std::string field(const json &change, const char *key, std::size_t index) {
  if (!change.is_object() || !change.contains(key) || !change[key].is_string()) {
    throw IoError("change " + std::to_string(index + 1) + " needs a string \"" + key + "\"");
  }
  return change[key].get<std::string>();
}

}  // namespace

Service::Service(ServiceOptions options) : options_(std::move(options)) {}

std::size_t Service::session_count() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

std::shared_ptr<Service::Entry> Service::find(const std::string &id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::shared_ptr<const Service::Snapshot> Service::current(const Entry &entry) const {
  std::shared_lock lock(mutex_);
  return entry.current;
}

void Service::publish(Entry &entry, std::shared_ptr<const Snapshot> next) {
  std::unique_lock lock(mutex_);
  entry.current = std::move(next);
}

HttpResponse Service::handle(const HttpRequest &req) {
  HttpResponse res;
  const auto parts = split_path(req.path);
  try {
    if (req.method == "OPTIONS") {
      res.status = 204;
      res.headers["Access-Control-Allow-Methods"] = "GET, POST, PATCH, OPTIONS";
      res.headers["Access-Control-Allow-Headers"] = "Content-Type, Accept, If-Match";
      res.headers["Access-Control-Max-Age"] = "600";
    } else if ((req.method == "POST" || req.method == "PATCH") && req.body.size() > options_.max_body) {
      res = error_response(413, "request body exceeds " + std::to_string(options_.max_body) + " bytes");
    } else if (parts.size() == 1 && parts[0] == "spec") {
      res = req.method == "GET" ? json_response(200, openapi_document()) : error_response(405, "use GET");
    } else if (parts.size() == 1 && parts[0] == "sessions") {
      if (req.method == "POST") {
        res = create(req);
      } else if (req.method == "GET") {
        ordered_json ids = ordered_json::array();
        std::shared_lock lock(mutex_);
        for (const auto &[id, entry] : sessions_) ids.push_back({{"id", id}, {"etag", entry->current->etag}});
        lock.unlock();
        res = json_response(200, {{"sessions", ids}});
      } else {
        res = error_response(405, "use GET or POST");
      }
    } else if (parts.size() == 2 && parts[0] == "sessions") {
      res = req.method == "GET" ? show(parts[1], req) : error_response(405, "use GET");
    } else if (parts.size() == 3 && parts[0] == "sessions") {
      static const std::set<std::string> writable{"appraisals", "weights", "mcgp"};
      static const std::set<std::string> readable{"ranking", "scri", "allocation"};
      if (writable.count(parts[2])) {
        res = req.method == "PATCH" ? patch(parts[1], parts[2], req) : error_response(405, "use PATCH");
      } else if (readable.count(parts[2])) {
        res = req.method == "GET" ? read_view(parts[1], parts[2], req) : error_response(405, "use GET");
      } else {
        res = error_response(404, "no such resource: " + req.path);
      }
    } else {
      res = error_response(404, "no such resource: " + req.path);
    }
  } catch (const IoError &e) {
    res = error_response(400, e.what());
  } catch (const StageError &e) {
    res = unprocessable(e.what());
  } catch (const DomainError &e) {
    res = unprocessable(e.what());
  } catch (const std::exception &e) {
    res = error_response(500, e.what());
  }
  if (res.status == 405) {
    if (parts.size() == 1 && parts[0] == "sessions") {
      res.headers["Allow"] = "GET, POST, OPTIONS";
    } else if (parts.size() == 3 && (parts[2] == "appraisals" || parts[2] == "weights" || parts[2] == "mcgp")) {
      res.headers["Allow"] = "PATCH, OPTIONS";
    } else {
      res.headers["Allow"] = "GET, OPTIONS";
    }
  }
  res.headers["Access-Control-Allow-Origin"] = options_.cors_origin;
  res.headers["Access-Control-Expose-Headers"] = "ETag, Location";
  res.headers["Vary"] = "Origin, Accept";
  return res;
}

HttpResponse Service::create(const HttpRequest &req) {
  const auto body = parse_body(req.body);
  auto loaded = dataset_from_document(body);
  if (!loaded.ok()) {
    return unprocessable("dataset has " + std::to_string(loaded.violations.size()) + " violation(s)", loaded.violations);
  }
  auto snap = std::make_shared<Snapshot>();
  snap->session = make_session(loaded.dataset);
  snap->revision = 1;
  snap->etag = make_etag(snap->revision, snap->session);

  auto entry = std::make_shared<Entry>();
  entry->current = snap;
  std::string id;
  {
    std::unique_lock lock(mutex_);
    char buf[32];
    std::snprintf(buf, sizeof buf, "s%06llu", static_cast<unsigned long long>(next_id_++));
    id = buf;
    sessions_[id] = entry;
  }
  auto res = json_response(201, session_summary(id, snap->revision, snap->etag, snap->session));
  res.headers["Location"] = "/sessions/" + id;
  res.headers["ETag"] = "\"" + snap->etag + "\"";
  return res;
}

HttpResponse Service::show(const std::string &id, const HttpRequest &req) {
  auto entry = find(id);
  if (!entry) return error_response(404, "no session " + id);
  if (negotiate(req.header("accept"), false).empty()) return error_response(406, "only application/json is offered");
  const auto snap = current(*entry);
  auto body = session_summary(id, snap->revision, snap->etag, snap->session);
  body["session"] = session_to_json(snap->session);
  auto res = json_response(200, body);
  res.headers["ETag"] = "\"" + snap->etag + "\"";
  return res;
}

HttpResponse Service::patch(const std::string &id, const std::string &what, const HttpRequest &req) {
  auto entry = find(id);
  if (!entry) return error_response(404, "no session " + id);
  std::lock_guard write(entry->write);
  const auto snap = current(*entry);
  const auto if_match = req.header("if-match");
  if (!if_match.empty() && if_match != "*" && strip_etag(if_match) != snap->etag) {
    auto res = error_response(409, "session changed: current etag is " + snap->etag);
    res.headers["ETag"] = "\"" + snap->etag + "\"";
    return res;
  }
  const auto body = parse_body(req.body);
  Dataset ds = snap->session.dataset;
  std::vector<Violation> problems;
  const auto &suppliers = ds.supplier_ids();
  auto known_supplier = [&](const std::string &s) { return std::find(suppliers.begin(), suppliers.end(), s) != suppliers.end(); };
  auto known_dm = [&](const std::string &d) {
    return std::find(ds.decision_makers.begin(), ds.decision_makers.end(), d) != ds.decision_makers.end();
  };

  if (what == "appraisals") {
    const auto &changes = changes_of(body);
    for (std::size_t i = 0; i < changes.size(); ++i) {
      Appraisal a{field(changes[i], "supplier", i), field(changes[i], "attribute", i), field(changes[i], "dm", i),
                  field(changes[i], "term", i)};
      const auto cell = "(" + a.supplier + ", " + a.attribute + ", " + a.dm + ")";
      const auto *spec = ds.find_attribute(a.attribute);
      if (!known_supplier(a.supplier)) {
        problems.push_back({"appraisals", i + 1, cell, "unknown supplier"});
      } else if (!spec || spec->attribute.kind != EvidenceKind::linguistic) {
        problems.push_back({"appraisals", i + 1, cell, "not a linguistic attribute"});
      } else if (!known_dm(a.dm)) {
        problems.push_back({"appraisals", i + 1, cell, "unknown decision maker"});
      } else if (!ds.performance.contains(a.term)) {
        problems.push_back({"appraisals", i + 1, cell, "unknown term " + a.term});
      } else {
        auto it = std::find_if(ds.appraisals.begin(), ds.appraisals.end(), [&](const Appraisal &x) {
          return x.supplier == a.supplier && x.attribute == a.attribute && x.dm == a.dm;
        });
        if (it == ds.appraisals.end()) {
          ds.appraisals.push_back(std::move(a));
        } else {
          it->term = a.term;
        }
      }
    }
  } else if (what == "weights") {
    const auto &changes = changes_of(body);
    for (std::size_t i = 0; i < changes.size(); ++i) {
      WeightJudgment w{field(changes[i], "attribute", i), field(changes[i], "dm", i), field(changes[i], "term", i)};
      const auto cell = "(" + w.attribute + ", " + w.dm + ")";
      if (!ds.find_attribute(w.attribute)) {
        problems.push_back({"weights", i + 1, cell, "unknown attribute"});
      } else if (!known_dm(w.dm)) {
        problems.push_back({"weights", i + 1, cell, "unknown decision maker"});
      } else if (!ds.weight.contains(w.term)) {
        problems.push_back({"weights", i + 1, cell, "unknown term " + w.term});
      } else {
        auto it = std::find_if(ds.weights.begin(), ds.weights.end(),
                               [&](const WeightJudgment &x) { return x.attribute == w.attribute && x.dm == w.dm; });
        if (it == ds.weights.end()) {
          ds.weights.push_back(std::move(w));
        } else {
          it->term = w.term;
        }
      }
    }
  } else {
    if (!body.is_object()) throw IoError("mcgp patch must be a JSON merge-patch object");
    json doc = ds.mcgp ? json::parse(mcgp_to_json(*ds.mcgp).dump()) : json::object();
    doc.merge_patch(body);
    try {
      ds.mcgp = mcgp_from_json(doc);
    } catch (const DomainError &e) {
      problems.push_back({"mcgp", 0, "", e.what()});
    } catch (const json::exception &e) {
      problems.push_back({"mcgp", 0, "", e.what()});
    }
  }
  if (!problems.empty()) return unprocessable("patch rejected", problems);
  if (auto v = validate(ds); !v.empty()) return unprocessable("patched dataset is invalid", v);

  auto next = std::make_shared<Snapshot>();
  next->session.dataset = std::move(ds);
  next->session.created = snap->session.created;
  auto &art = next->session.artifacts;
  if (what == "mcgp") {
    art.evidence = snap->session.artifacts.evidence;
    art.ranking = snap->session.artifacts.ranking;
  } else {
    art.evidence = evidence_stage(next->session.dataset);
    art.ranking = ranking_stage(next->session.dataset, art.evidence);
  }
  art.allocation = allocation_stage(next->session.dataset, art.ranking);
  next->revision = snap->revision + 1;
  next->etag = make_etag(next->revision, next->session);
  publish(*entry, next);

  auto res = json_response(200, session_summary(id, next->revision, next->etag, next->session));
  res.headers["ETag"] = "\"" + next->etag + "\"";
  return res;
}

HttpResponse Service::read_view(const std::string &id, const std::string &what, const HttpRequest &req) {
  auto entry = find(id);
  if (!entry) return error_response(404, "no session " + id);
  const auto type = negotiate(req.header("accept"), true);
  if (type.empty()) return error_response(406, "offered types are application/json and text/csv");
  const auto snap = current(*entry);
  const auto &s = snap->session;
  const bool csv = type == kCsv;
  HttpResponse res;

  auto query = [&](const char *key) -> std::optional<std::string> {
    auto it = req.query.find(key);
    if (it == req.query.end()) return std::nullopt;
    return it->second;
  };

  if (what == "ranking") {
    auto filter = GroupFilter::all;
    if (auto g = query("group")) {
      auto parsed = parse_group_filter(*g);
      if (!parsed) return error_response(400, "group must be all, resilience or cost");
      filter = *parsed;
    }
    const auto *ranking = s.artifacts.ranking.group(filter);
    if (!ranking) return error_response(404, std::string("dataset has no ") + to_string(filter) + " attributes");
    res = csv ? HttpResponse{200, {{"Content-Type", kCsv}}, ranking_csv(*ranking)}
              : json_response(200, ranking_view(*ranking, filter));
  } else if (what == "scri") {
    const auto &r = s.artifacts.ranking;
    if (!r.scri_inputs) return unprocessable("SCRI needs both a resilience and a cost attribute");
    std::vector<ScriRow> rows = r.scri;
    if (auto a = query("alpha")) {
      const auto alpha = parse_query_number(*a);
      if (!alpha || *alpha < 0.0 || *alpha > 1.0) return error_response(400, "alpha must be a number in [0, 1]");
      rows = {scri_row(*r.scri_inputs, *alpha)};
    }
    res = csv ? HttpResponse{200, {{"Content-Type", kCsv}}, scri_csv(*r.scri_inputs, rows)}
              : json_response(200, scri_to_json(*r.scri_inputs, rows));
  } else {
    if (!s.dataset.mcgp || !s.artifacts.allocation) return error_response(404, "session has no MCGP model");
    AllocationArtifacts alloc = *s.artifacts.allocation;
    if (auto t = query("tvp")) {
      const auto tvp = parse_query_number(*t);
      if (!tvp || *tvp < 0.0) return error_response(400, "tvp must be a nonnegative number");
      alloc = allocation_what_if(s.dataset, s.artifacts.ranking, *tvp);
    }
    if (csv) {
      res = HttpResponse{200, {{"Content-Type", kCsv}}, tvp_sweep_csv({SweepPoint{alloc.model.tvp_floor, alloc.result}})};
    } else {
      res = json_response(200, allocation_to_json(alloc));
    }
  }
  res.headers["ETag"] = "\"" + snap->etag + "\"";
  return res;
}

ordered_json openapi_document() {
  auto ref = [](const char *name) { return ordered_json{{"$ref", std::string("#/components/schemas/") + name}}; };
  auto json_content = [&](const char *schema) {
    return ordered_json{{"application/json", {{"schema", ref(schema)}}}};
  };
  auto both_content = [&](const char *schema) {
    return ordered_json{{"application/json", {{"schema", ref(schema)}}},
                        {"text/csv", {{"schema", {{"type", "string"}}}}}};
  };
  auto err = [&](const char *what) {
    return ordered_json{{"description", what}, {"content", json_content("Error")}};
  };
  const ordered_json id_param = {{"name", "id"}, {"in", "path"}, {"required", true}, {"schema", {{"type", "string"}}}};
  const ordered_json if_match = {
      {"name", "If-Match"}, {"in", "header"}, {"required", false}, {"schema", {{"type", "string"}}}};

  ordered_json doc;
  doc["openapi"] = "3.0.3";
  doc["info"] = {{"title", "Supplier ranking and order allocation service"}, {"version", "1.0.0"}};
  auto &paths = doc["paths"];
  paths["/spec"]["get"] = {{"summary", "This document"}, {"responses", {{"200", {{"description", "OpenAPI JSON"}}}}}};
  paths["/sessions"]["get"] = {{"summary", "List sessions"},
                               {"responses", {{"200", {{"description", "Session ids and etags"}}}}}};
  paths["/sessions"]["post"] = {
      {"summary", "Upload a dataset document and run the full pipeline"},
      {"requestBody", {{"required", true}, {"content", json_content("Dataset")}}},
      {"responses",
       {{"201", {{"description", "Created"}, {"content", json_content("SessionSummary")}}},
        {"400", err("Body is not a dataset document")},
        {"413", err("Body too large")},
        {"422", {{"description", "Validation failed"}, {"content", json_content("Violations")}}}}}};
  paths["/sessions/{id}"]["get"] = {
      {"summary", "Session snapshot with every artifact"},
      {"parameters", {id_param}},
      {"responses", {{"200", {{"description", "Summary plus the session document"}}}, {"404", err("Unknown session")}}}};
  for (const char *what : {"appraisals", "weights"}) {
    paths[std::string("/sessions/{id}/") + what]["patch"] = {
        {"summary", std::string("Replace or add ") + what + "; reruns evidence, ranking and allocation"},
        {"parameters", {id_param, if_match}},
        {"requestBody", {{"required", true}, {"content", json_content(what == std::string("appraisals") ? "AppraisalChanges" : "WeightChanges")}}},
        {"responses",
         {{"200", {{"description", "Updated"}, {"content", json_content("SessionSummary")}}},
          {"404", err("Unknown session")},
          {"409", err("If-Match does not match the current etag")},
          {"422", {{"description", "Invalid cell or term"}, {"content", json_content("Violations")}}}}}};
  }
  paths["/sessions/{id}/mcgp"]["patch"] = {
      {"summary", "JSON merge patch over the MCGP model; reruns allocation only"},
      {"parameters", {id_param, if_match}},
      {"requestBody", {{"required", true}, {"content", {{"application/merge-patch+json", {{"schema", {{"type", "object"}}}}}}}}},
      {"responses",
       {{"200", {{"description", "Updated"}, {"content", json_content("SessionSummary")}}},
        {"404", err("Unknown session")},
        {"409", err("If-Match does not match the current etag")},
        {"422", {{"description", "Invalid model"}, {"content", json_content("Violations")}}}}}};
  paths["/sessions/{id}/ranking"]["get"] = {
      {"summary", "Closeness ranking over all attributes or one group"},
      {"parameters",
       {id_param,
        {{"name", "group"}, {"in", "query"}, {"schema", {{"type", "string"}, {"enum", {"all", "resilience", "cost"}}}}}}},
      {"responses",
       {{"200", {{"description", "Ranking"}, {"content", both_content("Ranking")}}},
        {"400", err("Unknown group")},
        {"404", err("Unknown session or empty group")},
        {"406", err("Unsupported Accept")}}}};
  paths["/sessions/{id}/scri"]["get"] = {
      {"summary", "SCRI sweep, or one alpha computed on the fly"},
      {"parameters",
       {id_param, {{"name", "alpha"}, {"in", "query"}, {"schema", {{"type", "number"}, {"minimum", 0}, {"maximum", 1}}}}}},
      {"responses",
       {{"200", {{"description", "SCRI rows"}, {"content", both_content("Scri")}}},
        {"400", err("alpha outside [0, 1]")},
        {"404", err("Unknown session")}}}};
  paths["/sessions/{id}/allocation"]["get"] = {
      {"summary", "Order allocation, or a what-if at another TVP floor"},
      {"parameters", {id_param, {{"name", "tvp"}, {"in", "query"}, {"schema", {{"type", "number"}, {"minimum", 0}}}}}},
      {"responses",
       {{"200", {{"description", "Allocation"}, {"content", both_content("Allocation")}}},
        {"400", err("Bad tvp")},
        {"404", err("Unknown session or no MCGP model")}}}};

  doc["components"]["schemas"] = ordered_json::parse(R"({
    "Decimal": {"type": "string", "description": "decimal with 12 significant digits"},
    "Error": {
      "type": "object",
      "properties": {"error": {"type": "object", "properties": {"status": {"type": "integer"}, "message": {"type": "string"}}}}
    },
    "Violations": {
      "type": "object",
      "properties": {
        "error": {"$ref": "#/components/schemas/Error"},
        "violations": {
          "type": "array",
          "items": {
            "type": "object",
            "properties": {"table": {"type": "string"}, "row": {"type": "integer"}, "cell": {"type": "string"}, "message": {"type": "string"}}
          }
        }
      }
    },
    "Dataset": {
      "type": "object",
      "required": ["schemaVersion", "suppliers", "decisionMakers", "attributes"],
      "properties": {"schemaVersion": {"type": "integer", "enum": [1]}}
    },
    "SessionSummary": {
      "type": "object",
      "properties": {
        "id": {"type": "string"},
        "revision": {"type": "integer"},
        "etag": {"type": "string"},
        "hashes": {"type": "object"},
        "order": {"type": "array", "items": {"type": "string"}}
      }
    },
    "AppraisalChanges": {
      "type": "object",
      "properties": {
        "changes": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["supplier", "attribute", "dm", "term"],
            "properties": {"supplier": {"type": "string"}, "attribute": {"type": "string"}, "dm": {"type": "string"}, "term": {"type": "string"}}
          }
        }
      }
    },
    "WeightChanges": {
      "type": "object",
      "properties": {
        "changes": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["attribute", "dm", "term"],
            "properties": {"attribute": {"type": "string"}, "dm": {"type": "string"}, "term": {"type": "string"}}
          }
        }
      }
    },
    "Ranking": {
      "type": "object",
      "properties": {
        "group": {"type": "string"},
        "variant": {"type": "string"},
        "suppliers": {"type": "array"},
        "order": {"type": "array", "items": {"type": "string"}},
        "ideal": {"type": "array"},
        "normalized": {"type": "array", "items": {"$ref": "#/components/schemas/Decimal"}}
      }
    },
    "Scri": {
      "type": "object",
      "properties": {
        "suppliers": {"type": "array", "items": {"type": "string"}},
        "resilience": {"type": "array", "items": {"$ref": "#/components/schemas/Decimal"}},
        "cost": {"type": "array", "items": {"$ref": "#/components/schemas/Decimal"}},
        "rows": {"type": "array"}
      }
    },
    "Allocation": {
      "type": "object",
      "properties": {
        "model": {"type": "object"},
        "plan": {"type": "object"},
        "integerPlan": {"type": "object", "nullable": true},
        "reference": {"type": "object", "nullable": true}
      }
    }
  })");
  return doc;
}

}  // namespace sdss
