#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "sdss/service.h"
#include "support/fixtures.h"

using namespace sdss;
using nlohmann::json;

namespace {

HttpRequest request(std::string method, std::string path, std::string body = {},
                    std::map<std::string, std::string> query = {}) {
  HttpRequest r;
  r.method = std::move(method);
  r.path = std::move(path);
  r.body = std::move(body);
  r.query = std::move(query);
  r.headers["content-type"] = "application/json";
  return r;
}

const std::string &paper_body() {
  static const std::string body = dataset_to_document(fixtures::paper_case()).dump();
  return body;
}

std::string create(Service &svc, const std::string &body = paper_body()) {
  const auto res = svc.handle(request("POST", "/sessions", body));
  REQUIRE(res.status == 201);
  return json::parse(res.body)["id"].get<std::string>();
}

json body_of(const HttpResponse &res) { return json::parse(res.body); }

std::string appraisal_change(const std::string &term) {
  return json{{"changes", {{{"supplier", "S5"}, {"attribute", "C5"}, {"dm", "DM5"}, {"term", term}}}}}.dump();
}

}  // namespace

TEST_CASE("create and show") {
  Service svc;
  const auto res = svc.handle(request("POST", "/sessions", paper_body()));
  REQUIRE(res.status == 201);
  const auto j = body_of(res);
  CHECK(j["id"] == "s000001");
  CHECK(j["revision"] == 1);
  CHECK(res.headers.at("Location") == "/sessions/s000001");
  CHECK(res.headers.at("ETag") == "\"" + j["etag"].get<std::string>() + "\"");
  CHECK(j["etag"].get<std::string>().rfind("r1-", 0) == 0);
  CHECK(j["order"] == json::array({"S3", "S2", "S1", "S4", "S5"}));
  CHECK(res.headers.at("Access-Control-Allow-Origin") == "*");
  CHECK(svc.session_count() == 1);

  const auto shown = svc.handle(request("GET", "/sessions/s000001"));
  CHECK(shown.status == 200);
  CHECK(body_of(shown)["session"]["kind"] == "sdss-session");

  const auto list = body_of(svc.handle(request("GET", "/sessions")));
  CHECK(list["sessions"].size() == 1);
}

TEST_CASE("invalid uploads") {
  Service svc;
  CHECK(svc.handle(request("POST", "/sessions", "{not json")).status == 400);
  CHECK(svc.session_count() == 0);

  Service small({.max_body = 16});
  CHECK(small.handle(request("POST", "/sessions", paper_body())).status == 413);
}

TEST_CASE("defect upload lists the violation") {
  Service svc;
  auto doc = json::parse(paper_body());
  auto &rows = doc["appraisals"];
  for (auto it = rows.begin(); it != rows.end(); ++it) {
    const auto &r = *it;
    if (r.dump().find("\"S3\"") != std::string::npos && r.dump().find("\"C12\"") != std::string::npos &&
        r.dump().find("\"DM4\"") != std::string::npos) {
      rows.erase(it);
      break;
    }
  }
  const auto res = svc.handle(request("POST", "/sessions", doc.dump()));
  REQUIRE(res.status == 422);
  const auto v = body_of(res)["violations"];
  REQUIRE(v.size() == 1);
  CHECK(v[0]["cell"] == "(S3, C12, DM4)");
  CHECK(v[0]["message"] == "missing appraisal");
}

TEST_CASE("read views") {
  Service svc;
  const auto id = create(svc);
  const auto base = "/sessions/" + id;

  const auto rk = svc.handle(request("GET", base + "/ranking"));
  CHECK(rk.status == 200);
  CHECK(body_of(rk)["group"] == "all");
  CHECK(svc.handle(request("GET", base + "/ranking", {}, {{"group", "cost"}})).status == 200);
  CHECK(svc.handle(request("GET", base + "/ranking", {}, {{"group", "bogus"}})).status == 400);

  const auto sc = svc.handle(request("GET", base + "/scri", {}, {{"alpha", "0.2"}}));
  CHECK(sc.status == 200);
  CHECK(svc.handle(request("GET", base + "/scri", {}, {{"alpha", "1.5"}})).status == 400);
  CHECK(svc.handle(request("GET", base + "/scri", {}, {{"alpha", "x"}})).status == 400);

  const auto al = svc.handle(request("GET", base + "/allocation", {}, {{"tvp", "260"}}));
  CHECK(al.status == 200);
  CHECK(svc.handle(request("GET", base + "/allocation", {}, {{"tvp", "-1"}})).status == 400);

  auto csv_req = request("GET", base + "/ranking");
  csv_req.headers["accept"] = "text/csv";
  const auto csv = svc.handle(csv_req);
  CHECK(csv.status == 200);
  CHECK(csv.headers.at("Content-Type").rfind("text/csv", 0) == 0);
  CHECK(csv.body.rfind("supplier,d_plus,d_minus,closeness,normalized,rank\n", 0) == 0);

  auto bad_accept = request("GET", base + "/ranking");
  bad_accept.headers["accept"] = "application/xml";
  CHECK(svc.handle(bad_accept).status == 406);

  // byte-identical repeats
  CHECK(svc.handle(request("GET", base + "/scri")).body == svc.handle(request("GET", base + "/scri")).body);
  CHECK(svc.handle(request("GET", base)).body == svc.handle(request("GET", base)).body);

  // what-if queries do not change the session
  const auto etag = body_of(svc.handle(request("GET", base)))["etag"];
  svc.handle(request("GET", base + "/allocation", {}, {{"tvp", "100"}}));
  CHECK(body_of(svc.handle(request("GET", base)))["etag"] == etag);
}

TEST_CASE("no mcgp model") {
  Service svc;
  auto ds = fixtures::paper_case();
  ds.mcgp.reset();
  const auto id = create(svc, dataset_to_document(ds).dump());
  CHECK(svc.handle(request("GET", "/sessions/" + id + "/allocation")).status == 404);
}

TEST_CASE("scri needs both groups") {
  Service svc;
  auto ds = fixtures::paper_case();
  for (auto &a : ds.attributes) a.attribute.group = Group::resilience;
  const auto id = create(svc, dataset_to_document(ds).dump());
  CHECK(svc.handle(request("GET", "/sessions/" + id + "/scri")).status == 422);
  CHECK(svc.handle(request("GET", "/sessions/" + id + "/ranking", {}, {{"group", "cost"}})).status == 404);
}

TEST_CASE("appraisal patch reruns ranking but keeps allocation") {
  Service svc;
  const auto id = create(svc);
  const auto base = "/sessions/" + id;
  const auto before = body_of(svc.handle(request("GET", base)));

  auto patch = request("PATCH", base + "/appraisals", appraisal_change("M"));
  patch.headers["if-match"] = "\"" + before["etag"].get<std::string>() + "\"";
  const auto res = svc.handle(patch);
  REQUIRE(res.status == 200);
  const auto after = body_of(res);
  CHECK(after["revision"] == 2);
  CHECK(after["etag"] != before["etag"]);
  CHECK(after["hashes"]["evidence"] != before["hashes"]["evidence"]);
  CHECK(after["hashes"]["ranking"] != before["hashes"]["ranking"]);
  CHECK(after["hashes"]["allocation"] == before["hashes"]["allocation"]);

  // stale etag
  CHECK(svc.handle(patch).status == 409);

  // the inverse patch restores every stage
  const auto original = fixtures::paper_case();
  std::string term;
  for (const auto &a : original.appraisals)
    if (a.supplier == "S5" && a.attribute == "C5" && a.dm == "DM5") term = a.term;
  REQUIRE_FALSE(term.empty());
  const auto back = body_of(svc.handle(request("PATCH", base + "/appraisals", appraisal_change(term))));
  CHECK(back["revision"] == 3);
  CHECK(back["hashes"] == before["hashes"]);
}

TEST_CASE("patch rejections") {
  Service svc;
  const auto id = create(svc);
  const auto base = "/sessions/" + id;
  const auto bad = svc.handle(request("PATCH", base + "/appraisals", appraisal_change("SUPERB")));
  CHECK(bad.status == 422);
  CHECK(body_of(bad)["violations"][0]["cell"] == "(S5, C5, DM5)");

  const auto not_ling = json::array({{{"supplier", "S1"}, {"attribute", "C1"}, {"dm", "DM1"}, {"term", "G"}}});
  CHECK(svc.handle(request("PATCH", base + "/appraisals", not_ling.dump())).status == 422);
  CHECK(svc.handle(request("PATCH", base + "/appraisals", R"({"oops": 1})")).status == 400);
  const auto w = json::array({{{"attribute", "C3"}, {"dm", "DM9"}, {"term", "I"}}});
  CHECK(svc.handle(request("PATCH", base + "/weights", w.dump())).status == 422);
  CHECK(svc.handle(request("PATCH", base + "/mcgp", R"({"goals": {"tvpFloor": "-5"}})")).status == 422);
  CHECK(svc.handle(request("PATCH", "/sessions/s999999/appraisals", "[]")).status == 404);
  // nothing was published
  CHECK(body_of(svc.handle(request("GET", base)))["revision"] == 1);
}

TEST_CASE("weight patch") {
  Service svc;
  const auto id = create(svc);
  const auto before = body_of(svc.handle(request("GET", "/sessions/" + id)));
  const auto w = json{{"changes", {{{"attribute", "C3"}, {"dm", "DM1"}, {"term", "EI"}}}}};
  const auto res = svc.handle(request("PATCH", "/sessions/" + id + "/weights", w.dump()));
  REQUIRE(res.status == 200);
  CHECK(body_of(res)["hashes"]["evidence"] != before["hashes"]["evidence"]);
}

TEST_CASE("mcgp merge patch only reruns the allocation") {
  Service svc;
  const auto id = create(svc);
  const auto before = body_of(svc.handle(request("GET", "/sessions/" + id)));
  const auto res = svc.handle(request("PATCH", "/sessions/" + id + "/mcgp", R"({"goals": {"tvpFloor": "200"}})"));
  REQUIRE(res.status == 200);
  const auto after = body_of(res);
  CHECK(after["hashes"]["evidence"] == before["hashes"]["evidence"]);
  CHECK(after["hashes"]["ranking"] == before["hashes"]["ranking"]);
  CHECK(after["hashes"]["allocation"] != before["hashes"]["allocation"]);
  CHECK(after["hashes"]["dataset"] != before["hashes"]["dataset"]);
}

TEST_CASE("routing edges") {
  Service svc;
  CHECK(svc.handle(request("GET", "/nowhere")).status == 404);
  CHECK(svc.handle(request("GET", "/sessions/none")).status == 404);
  const auto del = svc.handle(request("DELETE", "/sessions"));
  CHECK(del.status == 405);
  CHECK(del.headers.at("Allow") == "GET, POST, OPTIONS");
  const auto id = create(svc);
  const auto put = svc.handle(request("GET", "/sessions/" + id + "/appraisals"));
  CHECK(put.status == 405);
  CHECK(put.headers.at("Allow") == "PATCH, OPTIONS");
  CHECK(svc.handle(request("POST", "/sessions/" + id + "/ranking")).status == 405);
  const auto pre = svc.handle(request("OPTIONS", "/sessions"));
  CHECK(pre.status == 204);
  CHECK(pre.headers.count("Access-Control-Allow-Methods") == 1);

  const auto spec = svc.handle(request("GET", "/spec"));
  CHECK(spec.status == 200);
  const auto doc = body_of(spec);
  CHECK(doc["openapi"] == "3.0.3");
  for (const char *p : {"/sessions", "/sessions/{id}", "/sessions/{id}/appraisals", "/sessions/{id}/weights",
                        "/sessions/{id}/mcgp", "/sessions/{id}/ranking", "/sessions/{id}/scri",
                        "/sessions/{id}/allocation"})
    CHECK(doc["paths"].contains(p));
}

TEST_CASE("readers see whole snapshots while a writer patches") {
  Service svc;
  const auto id = create(svc);
  const auto base = "/sessions/" + id;
  std::atomic<bool> stop{false};
  std::atomic<int> bad{0};
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t) {
    readers.emplace_back([&] {
      while (!stop) {
        const auto res = svc.handle(request("GET", base + "/ranking"));
        if (res.status != 200) ++bad;
        const auto j = json::parse(res.body);
        if (j["suppliers"].size() != 5) ++bad;
      }
    });
  }
  for (int k = 0; k < 6; ++k) {
    const auto res = svc.handle(request("PATCH", base + "/appraisals", appraisal_change(k % 2 ? "G" : "MG")));
    if (res.status != 200) ++bad;
  }
  stop = true;
  for (auto &t : readers) t.join();
  CHECK(bad == 0);
  CHECK(body_of(svc.handle(request("GET", base)))["revision"] == 7);
}
