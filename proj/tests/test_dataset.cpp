#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "sdss/dataset.h"
#include "sdss/error.h"
#include "support/fixtures.h"

using namespace sdss;
namespace fs = std::filesystem;

namespace {

bool has_message(const std::vector<Violation> &vs, const std::string &needle) {
  for (const auto &v : vs)
    if (v.message.find(needle) != std::string::npos) return true;
  return false;
}

fs::path scratch(const std::string &name) {
  auto dir = fs::temp_directory_path() / ("sdss_test_dataset_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("paper case loads clean") {
  const auto &ds = fixtures::paper_case();
  CHECK(ds.suppliers.size() == 5);
  CHECK(ds.attributes.size() == 19);
  CHECK(ds.decision_makers.size() == 5);
  CHECK(ds.appraisals.size() == 375);
  CHECK(ds.weights.size() == 95);
  CHECK(ds.mcgp.has_value());
  CHECK(validate(ds).empty());
  CHECK(ds.find_attribute("C4")->classes == 3);
  CHECK(ds.find_attribute("C99") == nullptr);
}

TEST_CASE("defect case reports the missing appraisal") {
  const auto res = load_dataset(fixtures::data_dir() / "defect-case");
  REQUIRE(res.violations.size() == 1);
  CHECK(res.violations[0].cell == "(S3, C12, DM4)");
  CHECK(res.violations[0].message == "missing appraisal");
}

TEST_CASE("missing path is an I/O error") {
  CHECK_THROWS_AS(load_dataset(fixtures::data_dir() / "no-such-case"), IoError);
}

TEST_CASE("in-memory violations") {
  SUBCASE("no suppliers") {
    auto ds = fixtures::paper_case();
    ds.suppliers.clear();
    CHECK(has_message(validate(ds), "at least one supplier"));
  }
  SUBCASE("unknown term") {
    auto ds = fixtures::paper_case();
    ds.appraisals[7].term = "SUPERB";
    const auto vs = validate(ds);
    CHECK(has_message(vs, "unknown term 'SUPERB'"));
    CHECK(vs.front().row == 8);
  }
  SUBCASE("duplicate appraisal") {
    auto ds = fixtures::paper_case();
    ds.appraisals.push_back(ds.appraisals.front());
    CHECK(has_message(validate(ds), "duplicate appraisal"));
  }
  SUBCASE("missing weight") {
    auto ds = fixtures::paper_case();
    ds.weights.pop_back();
    CHECK(has_message(validate(ds), "missing weight judgment"));
  }
  SUBCASE("reversed range") {
    auto ds = fixtures::paper_case();
    std::swap(ds.ranges[0].ranges[0].p, ds.ranges[0].ranges[0].q);
    if (ds.ranges[0].ranges[0].p != ds.ranges[0].ranges[0].q) CHECK(has_message(validate(ds), "needs p <= q"));
  }
  SUBCASE("override on a linguistic attribute") {
    auto ds = fixtures::paper_case();
    ds.overrides.push_back({"S1", "C5", {1, 2, 3}});
    CHECK(has_message(validate(ds), "temporal or granular attributes only"));
  }
  SUBCASE("class count on a linguistic attribute") {
    auto ds = fixtures::paper_case();
    for (auto &a : ds.attributes)
      if (a.attribute.id == "C5") a.classes = 5;
    CHECK(has_message(validate(ds), "granular attributes only"));
  }
  SUBCASE("several problems are all reported") {
    auto ds = fixtures::paper_case();
    ds.appraisals[0].term = "??";
    ds.appraisals[1].dm = "DM9";
    ds.config.scri_step = 0.7;
    CHECK(validate(ds).size() >= 3);
  }
}

TEST_CASE("bundle round trip") {
  const auto dir = scratch("bundle");
  save_bundle(fixtures::paper_case(), dir);
  const auto back = load_dataset(dir);
  CHECK(back.ok());
  CHECK(back.dataset == fixtures::paper_case());
  fs::remove_all(dir);
}

TEST_CASE("document round trip") {
  const auto doc = dataset_to_document(fixtures::paper_case());
  const auto back = dataset_from_document(nlohmann::json::parse(doc.dump()));
  CHECK(back.ok());
  CHECK(back.dataset == fixtures::paper_case());
  CHECK(dataset_to_document(back.dataset).dump() == doc.dump());

  // a document file loads through the same entry point
  const auto dir = scratch("doc");
  fs::create_directories(dir);
  std::ofstream(dir / "case.json") << doc.dump(2);
  CHECK(load_dataset(dir / "case.json").dataset == fixtures::paper_case());
  fs::remove_all(dir);
}

TEST_CASE("config keys") {
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"bogus": 1})")), DomainError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"frame": {"clases": 7}})")), DomainError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"distanceVariant": "euclid"})")), DomainError);
  const auto c = config_from_json(nlohmann::json::parse(R"({"frame": {"classes": 9}, "temporal": {"fit": "mode"}})"));
  CHECK(c.frame_classes == 9);
  CHECK(c.fit == TriangleFit::mode);
  CHECK(config_from_json(config_to_json(c)) == c);

  auto doc = dataset_to_document(fixtures::paper_case());
  doc["config"]["bogus"] = true;
  const auto res = dataset_from_document(nlohmann::json::parse(doc.dump()));
  CHECK_FALSE(res.ok());
}

TEST_CASE("unsupported schema version") {
  auto doc = dataset_to_document(fixtures::paper_case());
  doc["schemaVersion"] = kSchemaVersion + 1;
  CHECK_THROWS_AS(dataset_from_document(nlohmann::json::parse(doc.dump())), IoError);
}

TEST_CASE("mcgp json round trip keeps reals exact") {
  const auto &spec = *fixtures::paper_case().mcgp;
  const auto back = mcgp_from_json(nlohmann::json::parse(mcgp_to_json(spec).dump()));
  CHECK(back == spec);
  CHECK(spec.coefficient_sets.count("ranking_rho") == 1);
  CHECK(spec.reference_plan->size() == 5);
}
