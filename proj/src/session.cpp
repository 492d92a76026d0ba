#include "sdss/session.h"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "sdss/error.h"
#include "sdss/json_util.h"

namespace sdss {

using nlohmann::json;
using nlohmann::ordered_json;
using jsonutil::num;
using jsonutil::read_num;

namespace {

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json nums(const std::vector<double> &v) {
  auto out = ordered_json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

template <std::size_t N>
ordered_json nums(const std::array<double, N> &v) {
  return nums(std::vector<double>(v.begin(), v.end()));
}

std::vector<double> read_nums(const json &j, const std::string &what) {
  std::vector<double> out;
  for (const auto &x : j) out.push_back(read_num(x, what));
  return out;
}

template <std::size_t N>
std::array<double, N> read_array(const json &j, const std::string &what) {
  const auto v = read_nums(j, what);
  if (v.size() != N) throw DomainError(what + ": expected " + std::to_string(N) + " values");
  std::array<double, N> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

// Serialized TFNs may be degenerate or, for audits, never validated; read them
// without the ordering check of make_tfn.
Tfn read_raw_tfn(const json &j, const std::string &what) {
  if (!j.is_array() || j.size() != 3) throw DomainError(what + ": expected [a, b, c]");
  return Tfn{read_num(j[0], what), read_num(j[1], what), read_num(j[2], what)};
}

ordered_json tfns(const std::vector<Tfn> &v) {
  auto out = ordered_json::array();
  for (const auto &t : v) out.push_back(jsonutil::tfn(t));
  return out;
}

std::vector<Tfn> read_tfns(const json &j, const std::string &what) {
  std::vector<Tfn> out;
  for (const auto &t : j) out.push_back(read_raw_tfn(t, what));
  return out;
}

std::vector<std::string> strings(const json &j) { return j.get<std::vector<std::string>>(); }

ordered_json attribute_json(const Attribute &a) {
  return {{"id", a.id},
          {"name", a.name},
          {"kind", to_string(a.kind)},
          {"objective", to_string(a.objective)},
          {"group", to_string(a.group)}};
}

Attribute read_attribute(const json &j) {
  Attribute a;
  a.id = j.at("id").get<std::string>();
  a.name = j.at("name").get<std::string>();
  auto k = parse_evidence_kind(j.at("kind").get<std::string>());
  auto o = parse_objective(j.at("objective").get<std::string>());
  auto g = parse_group(j.at("group").get<std::string>());
  if (!k || !o || !g) throw DomainError("attribute " + a.id + ": bad kind, objective or group");
  a.kind = *k;
  a.objective = *o;
  a.group = *g;
  return a;
}

RankingResult read_ranking(const json &j) {
  RankingResult r;
  auto v = parse_distance_variant(j.at("variant").get<std::string>());
  if (!v) throw DomainError("ranking: unknown distance variant");
  r.variant = *v;
  for (const auto &s : j.at("suppliers")) {
    r.scores.push_back({s.at("supplier").get<std::string>(), read_num(s.at("dPlus"), "dPlus"),
                        read_num(s.at("dMinus"), "dMinus"), read_num(s.at("closeness"), "closeness"),
                        s.at("rank").get<int>()});
  }
  for (const auto &a : j.at("ideal")) {
    r.attributes.push_back(a.at("attribute").get<std::string>());
    r.ideal.pis.push_back(read_raw_tfn(a.at("pis"), "pis"));
    r.ideal.nis.push_back(read_raw_tfn(a.at("nis"), "nis"));
  }
  r.warnings = strings(j.at("warnings"));
  return r;
}

ordered_json deviations_json(const Deviations &d) {
  return {{"dPlus", nums(d.d_plus)}, {"dMinus", nums(d.d_minus)}, {"ePlus", nums(d.e_plus)}, {"eMinus", nums(d.e_minus)}};
}

Deviations read_deviations(const json &j) {
  Deviations d;
  d.d_plus = read_array<4>(j.at("dPlus"), "dPlus");
  d.d_minus = read_array<4>(j.at("dMinus"), "dMinus");
  d.e_plus = read_array<2>(j.at("ePlus"), "ePlus");
  d.e_minus = read_array<2>(j.at("eMinus"), "eMinus");
  return d;
}

ordered_json achieved_json(const Achieved &a) {
  return {{"tvp", num(a.tvp)}, {"spend", num(a.spend)}, {"avgLeadTime", num(a.avg_lead_time)}, {"totalQty", num(a.total_qty)}};
}

Achieved read_achieved(const json &j) {
  return {read_num(j.at("tvp"), "tvp"), read_num(j.at("spend"), "spend"), read_num(j.at("avgLeadTime"), "avgLeadTime"),
          read_num(j.at("totalQty"), "totalQty")};
}

AllocationPlan read_plan(const json &j) {
  AllocationPlan p;
  p.suppliers = strings(j.at("suppliers"));
  p.quantities = read_nums(j.at("quantities"), "quantities");
  p.objective = read_num(j.at("objective"), "objective");
  p.y1 = read_num(j.at("y1"), "y1");
  p.y2 = read_num(j.at("y2"), "y2");
  p.achieved = read_achieved(j.at("achieved"));
  p.deviations = read_deviations(j.at("deviations"));
  p.status = j.at("status").get<std::string>();
  p.duality_gap = read_num(j.at("dualityGap"), "dualityGap");
  p.dual_infeasibility = read_num(j.at("dualInfeasibility"), "dualInfeasibility");
  return p;
}

ordered_json evaluation_json(const PlanEvaluation &e) {
  return {{"objective", num(e.objective)},
          {"y1", num(e.y1)},
          {"y2", num(e.y2)},
          {"achieved", achieved_json(e.achieved)},
          {"deviations", deviations_json(e.deviations)}};
}

PlanEvaluation read_evaluation(const json &j) {
  PlanEvaluation e;
  e.objective = read_num(j.at("objective"), "objective");
  e.y1 = read_num(j.at("y1"), "y1");
  e.y2 = read_num(j.at("y2"), "y2");
  e.achieved = read_achieved(j.at("achieved"));
  e.deviations = read_deviations(j.at("deviations"));
  return e;
}

MembershipStage read_stage(const std::string &s) {
  for (auto st : {MembershipStage::raw, MembershipStage::reliability_modified, MembershipStage::aggregated,
                  MembershipStage::normalized}) {
    if (s == to_string(st)) return st;
  }
  throw DomainError("unknown membership stage " + s);
}

}  // namespace

ordered_json ranking_to_json(const RankingResult &r) {
  ordered_json j;
  j["variant"] = to_string(r.variant);
  auto suppliers = ordered_json::array();
  for (const auto &s : r.scores) {
    suppliers.push_back({{"supplier", s.supplier},
                         {"dPlus", num(s.d_plus)},
                         {"dMinus", num(s.d_minus)},
                         {"closeness", num(s.closeness)},
                         {"rank", s.rank}});
  }
  j["suppliers"] = suppliers;
  j["order"] = r.order();
  auto ideal = ordered_json::array();
  for (std::size_t k = 0; k < r.attributes.size(); ++k) {
    ideal.push_back({{"attribute", r.attributes[k]}, {"pis", jsonutil::tfn(r.ideal.pis[k])}, {"nis", jsonutil::tfn(r.ideal.nis[k])}});
  }
  j["ideal"] = ideal;
  j["warnings"] = r.warnings;
  return j;
}

ordered_json ranking_view(const RankingResult &r, GroupFilter group) {
  ordered_json j;
  j["group"] = to_string(group);
  const auto body = ranking_to_json(r);
  for (const auto &[k, v] : body.items()) j[k] = v;
  j["normalized"] = nums(r.normalized_closeness());
  return j;
}

std::string ranking_csv(const RankingResult &r) {
  std::string out = "supplier,d_plus,d_minus,closeness,normalized,rank\n";
  const auto norm = r.normalized_closeness();
  for (std::size_t i = 0; i < r.scores.size(); ++i) {
    const auto &s = r.scores[i];
    out += s.supplier + "," + num(s.d_plus) + "," + num(s.d_minus) + "," + num(s.closeness) + "," + num(norm[i]) +
           "," + std::to_string(s.rank) + "\n";
  }
  return out;
}

ordered_json scri_to_json(const ScriInputs &inputs, const std::vector<ScriRow> &rows) {
  ordered_json j;
  j["suppliers"] = inputs.suppliers;
  j["resilience"] = nums(inputs.resilience);
  j["cost"] = nums(inputs.cost);
  auto out = ordered_json::array();
  for (const auto &r : rows) {
    out.push_back({{"alpha", num(r.alpha)},
                   {"values", nums(r.values)},
                   {"argmax", r.argmax},
                   {"argmaxSupplier", inputs.suppliers.at(r.argmax)}});
  }
  j["rows"] = out;
  return j;
}

ordered_json plan_to_json(const AllocationPlan &p) {
  ordered_json j;
  j["status"] = p.status;
  j["suppliers"] = p.suppliers;
  j["quantities"] = nums(p.quantities);
  j["objective"] = num(p.objective);
  j["y1"] = num(p.y1);
  j["y2"] = num(p.y2);
  j["achieved"] = achieved_json(p.achieved);
  j["deviations"] = deviations_json(p.deviations);
  j["dualityGap"] = num(p.duality_gap);
  j["dualInfeasibility"] = num(p.dual_infeasibility);
  return j;
}

ordered_json allocation_to_json(const AllocationArtifacts &a) {
  ordered_json j;
  McgpSpec spec;
  spec.model = a.model;
  const auto full = mcgp_to_json(spec);
  j["model"] = {{"suppliers", full["suppliers"]}, {"goals", full["goals"]}, {"goalWeights", full["goalWeights"]}};
  j["plan"] = plan_to_json(a.result.plan);
  j["integerPlan"] = a.result.integer_plan ? plan_to_json(*a.result.integer_plan) : ordered_json(nullptr);
  j["leadIterations"] = a.result.lead_iterations;
  j["denominator"] = num(a.result.denominator);
  j["reference"] = a.reference ? evaluation_json(*a.reference) : ordered_json(nullptr);
  return j;
}

ordered_json evidence_to_json(const EvidenceArtifacts &e) {
  const auto &m = e.matrix;
  ordered_json j;
  j["suppliers"] = m.suppliers;
  auto attrs = ordered_json::array();
  for (const auto &a : m.attributes) attrs.push_back(attribute_json(a));
  j["attributes"] = attrs;
  auto cells = ordered_json::array();
  auto sources = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = ordered_json::array();
    auto src = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row.push_back(jsonutil::tfn(m.cell(i, c)));
      src.push_back(e.sources[i * m.cols() + c]);
    }
    cells.push_back(row);
    sources.push_back(src);
  }
  j["cells"] = cells;
  j["sources"] = sources;
  j["weights"] = tfns(m.weights);
  auto temporal = ordered_json::array();
  for (const auto &t : e.temporal) {
    temporal.push_back({{"supplier", t.supplier},
                        {"attribute", t.attribute},
                        {"tfn", jsonutil::tfn(t.tfn)},
                        {"bins", t.bins},
                        {"modeX", num(t.mode_x)},
                        {"warnings", t.warnings}});
  }
  j["temporal"] = temporal;
  auto granular = ordered_json::array();
  for (const auto &g : e.granular) {
    auto rows = ordered_json::array();
    for (const auto &r : g.normalized) rows.push_back({{"stage", to_string(r.stage)}, {"perClass", nums(r.per_class)}});
    granular.push_back({{"attribute", g.attribute},
                        {"classes", g.classes},
                        {"lo", num(g.lo)},
                        {"hi", num(g.hi)},
                        {"reliability",
                         {{"static", num(g.reliability.static_index)},
                          {"dynamic", num(g.reliability.dynamic_index)},
                          {"comprehensive", num(g.reliability.comprehensive)},
                          {"normalized", num(g.reliability.normalized)},
                          {"testSamples", nums(g.reliability.test_samples)}}},
                        {"suppliers", g.suppliers},
                        {"normalized", rows},
                        {"tfns", tfns(g.tfns)}});
  }
  j["granular"] = granular;
  j["warnings"] = e.warnings;
  return j;
}

ordered_json artifacts_to_json(const Artifacts &a) {
  ordered_json j;
  j["evidence"] = evidence_to_json(a.evidence);
  const auto &r = a.ranking;
  ordered_json ranking;
  ranking["all"] = ranking_to_json(r.all);
  ranking["resilience"] = r.resilience ? ranking_to_json(*r.resilience) : ordered_json(nullptr);
  ranking["cost"] = r.cost ? ranking_to_json(*r.cost) : ordered_json(nullptr);
  ranking["scri"] = r.scri_inputs ? scri_to_json(*r.scri_inputs, r.scri) : ordered_json(nullptr);
  ranking["warnings"] = r.warnings;
  j["ranking"] = ranking;
  j["allocation"] = a.allocation ? allocation_to_json(*a.allocation) : ordered_json(nullptr);
  return j;
}

Artifacts artifacts_from_json(const json &j) {
  Artifacts a;
  try {
    const auto &e = j.at("evidence");
    auto &m = a.evidence.matrix;
    m.suppliers = strings(e.at("suppliers"));
    for (const auto &x : e.at("attributes")) m.attributes.push_back(read_attribute(x));
    for (const auto &row : e.at("cells")) {
      for (const auto &t : row) m.cells.push_back(read_raw_tfn(t, "cell"));
    }
    for (const auto &row : e.at("sources")) {
      for (const auto &s : row) a.evidence.sources.push_back(s.get<std::string>());
    }
    m.weights = read_tfns(e.at("weights"), "weight");
    if (m.cells.size() != m.rows() * m.cols() || a.evidence.sources.size() != m.cells.size()) {
      throw DomainError("evidence grid does not match its suppliers and attributes");
    }
    for (const auto &t : e.at("temporal")) {
      a.evidence.temporal.push_back({t.at("supplier").get<std::string>(), t.at("attribute").get<std::string>(),
                                     read_raw_tfn(t.at("tfn"), "tfn"), t.at("bins").get<std::size_t>(),
                                     read_num(t.at("modeX"), "modeX"), strings(t.at("warnings"))});
    }
    for (const auto &g : e.at("granular")) {
      GranularAudit audit;
      audit.attribute = g.at("attribute").get<std::string>();
      audit.classes = g.at("classes").get<int>();
      audit.lo = read_num(g.at("lo"), "lo");
      audit.hi = read_num(g.at("hi"), "hi");
      const auto &rel = g.at("reliability");
      audit.reliability.static_index = read_num(rel.at("static"), "static");
      audit.reliability.dynamic_index = read_num(rel.at("dynamic"), "dynamic");
      audit.reliability.comprehensive = read_num(rel.at("comprehensive"), "comprehensive");
      audit.reliability.normalized = read_num(rel.at("normalized"), "normalized");
      audit.reliability.test_samples = read_nums(rel.at("testSamples"), "testSamples");
      audit.suppliers = strings(g.at("suppliers"));
      for (const auto &r : g.at("normalized")) {
        audit.normalized.push_back({read_nums(r.at("perClass"), "perClass"), read_stage(r.at("stage").get<std::string>())});
      }
      audit.tfns = read_tfns(g.at("tfns"), "tfn");
      a.evidence.granular.push_back(std::move(audit));
    }
    a.evidence.warnings = strings(e.at("warnings"));

    const auto &r = j.at("ranking");
    a.ranking.all = read_ranking(r.at("all"));
    if (!r.at("resilience").is_null()) a.ranking.resilience = read_ranking(r["resilience"]);
    if (!r.at("cost").is_null()) a.ranking.cost = read_ranking(r["cost"]);
    if (!r.at("scri").is_null()) {
      const auto &s = r["scri"];
      a.ranking.scri_inputs = ScriInputs{strings(s.at("suppliers")), read_nums(s.at("resilience"), "resilience"),
                                         read_nums(s.at("cost"), "cost")};
      for (const auto &row : s.at("rows")) {
        a.ranking.scri.push_back({read_num(row.at("alpha"), "alpha"), read_nums(row.at("values"), "values"),
                                  row.at("argmax").get<std::size_t>()});
      }
    }
    a.ranking.warnings = strings(r.at("warnings"));

    const auto &al = j.at("allocation");
    if (!al.is_null()) {
      AllocationArtifacts out;
      json model = al.at("model");
      out.model = mcgp_from_json(model).model;
      out.result.plan = read_plan(al.at("plan"));
      if (!al.at("integerPlan").is_null()) out.result.integer_plan = read_plan(al["integerPlan"]);
      out.result.lead_iterations = al.at("leadIterations").get<std::size_t>();
      out.result.denominator = read_num(al.at("denominator"), "denominator");
      if (!al.at("reference").is_null()) out.reference = read_evaluation(al["reference"]);
      a.allocation = std::move(out);
    }
  } catch (const json::exception &e) {
    throw IoError(std::string("malformed artifacts: ") + e.what());
  } catch (const DomainError &e) {
    throw IoError(std::string("malformed artifacts: ") + e.what());
  }
  return a;
}

std::string json_hash(const ordered_json &j) { return jsonutil::sha256_hex(j.dump()); }

Session make_session(const Dataset &dataset) { return Session{dataset, run_pipeline(dataset), utc_now()}; }

namespace {

ordered_json hashed_body(const ordered_json &dataset, const ordered_json &artifacts) {
  ordered_json body;
  body["dataset"] = dataset;
  body["artifacts"] = artifacts;
  return body;
}

}  // namespace

ordered_json session_to_json(const Session &s) {
  const auto dataset = dataset_to_document(s.dataset);
  const auto artifacts = artifacts_to_json(s.artifacts);
  ordered_json j;
  j["kind"] = "sdss-session";
  j["sessionVersion"] = kSessionVersion;
  j["created"] = s.created;
  j["provenance"] = {{"configHash", json_hash(config_to_json(s.dataset.config))},
                     {"datasetHash", json_hash(dataset)},
                     {"artifactHash", json_hash(artifacts)}};
  j["hash"] = json_hash(hashed_body(dataset, artifacts));
  j["dataset"] = dataset;
  j["artifacts"] = artifacts;
  return j;
}

LoadedSession session_from_json(const json &j) {
  if (!j.is_object() || j.value("kind", "") != "sdss-session") throw IoError("not a session document");
  if (!j.contains("sessionVersion") || !j["sessionVersion"].is_number_integer()) {
    throw IoError("session document has no version");
  }
  const int version = j["sessionVersion"].get<int>();
  if (version != kSessionVersion) {
    throw IoError("unsupported session version " + std::to_string(version) + " (expected " +
                  std::to_string(kSessionVersion) + ")");
  }
  LoadedSession out;
  auto loaded = dataset_from_document(j.at("dataset"));
  out.session.dataset = std::move(loaded.dataset);
  for (const auto &v : loaded.violations) out.warnings.push_back("dataset: " + v.to_string());
  out.session.artifacts = artifacts_from_json(j.at("artifacts"));
  out.session.created = j.value("created", "");

  const auto dataset = dataset_to_document(out.session.dataset);
  const auto artifacts = artifacts_to_json(out.session.artifacts);
  const auto expected = json_hash(hashed_body(dataset, artifacts));
  if (j.value("hash", "") != expected) {
    out.warnings.push_back("integrity: stored hash does not match the session contents");
  }
  return out;
}

void write_file_atomic(const std::filesystem::path &path, const std::string &text) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot replace " + path.string() + ": " + ec.message());
  }
}

void save_session(const Session &session, const std::filesystem::path &path) {
  write_file_atomic(path, session_to_json(session).dump(2) + "\n");
}

LoadedSession load_session(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error &e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return session_from_json(j);
}

}  // namespace sdss
