#include <map>

#include "doctest.h"
#include "sdss/dataset.h"
#include "sdss/error.h"
#include "sdss/qualitative.h"
#include "sdss/scale.h"
#include "support/published.h"

using namespace sdss;

TEST_CASE("built-in scales") {
  const auto &p = performance_scale();
  REQUIRE(p.size() == 9);
  CHECK(*p.find("VB") == Tfn{0, 1, 2});
  CHECK(*p.find("B") == Tfn{1, 2, 3});
  CHECK(*p.find("EG") == Tfn{8, 9, 10});
  CHECK(p.rank("M") == 3);
  CHECK(p.rank("nope") == -1);
  const auto &w = weight_scale();
  CHECK(*w.find("VUI") == Tfn{0, 0.1, 0.2});
  CHECK(*w.find("UI") == Tfn{0.1, 0.2, 0.3});
  CHECK(*w.find("EI") == Tfn{0.8, 0.9, 1.0});
  CHECK_FALSE(w.contains("VB"));
}

TEST_CASE("scale JSON round trip and rejection") {
  const auto &p = performance_scale();
  CHECK(LinguisticScale::from_json(p.to_json()) == p);
  const auto s = LinguisticScale::from_json(R"({"name":"x","terms":{"hi":[2,3,4],"lo":[0,1,2]}})");
  CHECK(s.entries().front().term == "lo");
  CHECK_THROWS_AS(LinguisticScale::from_json(R"({"name":"x","terms":{"a":[0,1,2],"b":[0,1,2]}})"), DomainError);
  CHECK_THROWS_AS(LinguisticScale::from_json(R"({"name":"x","terms":{"a":[2,1,0]}})"), DomainError);
  CHECK_THROWS_AS(LinguisticScale::from_json("not json"), DomainError);
}

// The middle weight terms are not printed anywhere; they were fitted so that the
// published attribute weights come out of the published judgments. Re-run that
// fit: every assignment of unit-step triangles to M, MI, I, VI between UI and EI,
// and require exactly one to reproduce all 19 weights (a and c exact, b to 0.005).
TEST_CASE("weight scale interior terms are the unique unit-step fit") {
  const auto loaded = load_dataset(SDSS_DATA_DIR "/paper-case");
  REQUIRE(loaded.ok());
  const auto &ds = loaded.dataset;
  auto step = [](int k) { return Tfn{k / 10.0, (k + 1) / 10.0, (k + 2) / 10.0}; };

  int solutions = 0;
  std::array<int, 4> found{};
  for (int m = 2; m <= 7; ++m)
    for (int mi = m + 1; mi <= 7; ++mi)
      for (int i = mi + 1; i <= 7; ++i)
        for (int vi = i + 1; vi <= 7; ++vi) {
          const LinguisticScale candidate("candidate", {{"VUI", step(0)},
                                                        {"UI", step(1)},
                                                        {"M", step(m)},
                                                        {"MI", step(mi)},
                                                        {"I", step(i)},
                                                        {"VI", step(vi)},
                                                        {"EI", step(8)}});
          bool all = true;
          for (std::size_t j = 0; j < ds.attributes.size() && all; ++j) {
            std::vector<WeightJudgment> js;
            for (const auto &w : ds.weights) {
              if (w.attribute == ds.attributes[j].attribute.id) js.push_back(w);
            }
            const auto t = build_weight_tfn(js, ds.decision_makers, candidate);
            const auto &ref = published::kWeights[j];
            all = std::abs(t.a - ref.a) < 1e-9 && std::abs(t.c - ref.c) < 1e-9 && std::abs(t.b - ref.b) <= 0.005;
          }
          if (all) {
            ++solutions;
            found = {m, mi, i, vi};
          }
        }
  CHECK(solutions == 1);
  CHECK(found == std::array<int, 4>{3, 4, 5, 6});
  const auto &w = weight_scale();
  CHECK(*w.find("M") == step(3));
  CHECK(*w.find("MI") == step(4));
  CHECK(*w.find("I") == step(5));
  CHECK(*w.find("VI") == step(6));
}
