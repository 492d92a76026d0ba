#include "sdss/cli.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "sdss/error.h"
#include "sdss/json_util.h"
#include "sdss/service.h"
#include "sdss/session.h"
#include "sdss/synth.h"

namespace sdss {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string config;
  std::string output;
  bool json = false;
  std::optional<std::uint64_t> seed;
};

struct PipelineFlags {
  std::string distance;
  bool from_raw = false;
  std::optional<std::size_t> reliability_samples;
};

void add_pipeline_flags(CLI::App *cmd, PipelineFlags &f) {
  cmd->add_option("--distance-variant", f.distance, "Distance aggregation")
      ->check(CLI::IsMember({"paper", "per_attribute"}));
  cmd->add_flag("--from-raw", f.from_raw, "Use series and ranges instead of precomputed TFNs");
  cmd->add_option("--reliability-samples", f.reliability_samples,
                  "Draw this many seeded uniform reliability samples (see --seed)")
      ->check(CLI::PositiveNumber);
}

json read_json_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error &e) {
    throw IoError(path + ": " + e.what());
  }
}

std::string fmt(const char *format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

void print_violations(const std::vector<Violation> &violations, std::ostream &err) {
  for (const auto &v : violations) err << v.to_string() << "\n";
  err << violations.size() << " violation(s)\n";
}

// Loads and validates a dataset, then layers --config and the command flags
// over its manifest config.
Dataset prepare(const std::string &path, const Globals &g, const PipelineFlags &f, std::ostream &err) {
  auto loaded = load_dataset(path);
  if (!loaded.ok()) {
    print_violations(loaded.violations, err);
    throw DomainError(path + " is not a valid dataset");
  }
  auto ds = std::move(loaded.dataset);
  if (!g.config.empty()) {
    try {
      ds.config = config_from_json(read_json_file(g.config), ds.config);
    } catch (const DomainError &e) {
      throw UsageError(g.config + ": " + e.what());
    }
  }
  if (!f.distance.empty()) ds.config.distance = *parse_distance_variant(f.distance);
  if (f.from_raw) ds.config.from_raw = true;
  if (f.reliability_samples) {
    ds.config.reliability.mode = SampleMode::seeded_uniform;
    ds.config.reliability.samples = *f.reliability_samples;
  }
  if (g.seed) ds.config.reliability.seed = *g.seed;
  if (auto v = validate(ds); !v.empty()) {
    print_violations(v, err);
    throw DomainError("configuration makes the dataset invalid");
  }
  return ds;
}

std::string ranking_text(const RankingResult &r, GroupFilter group) {
  std::ostringstream os;
  os << "group " << to_string(group) << ", distance variant " << to_string(r.variant) << "\n";
  os << "rank  supplier  d+          d-          closeness  normalized\n";
  const auto norm = r.normalized_closeness();
  std::vector<std::size_t> idx(r.scores.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return r.scores[a].rank < r.scores[b].rank; });
  char line[160];
  for (auto i : idx) {
    const auto &s = r.scores[i];
    std::snprintf(line, sizeof line, "%-5d %-9s %-11.6f %-11.6f %-10.4f %.4f\n", s.rank, s.supplier.c_str(), s.d_plus,
                  s.d_minus, s.closeness, norm[i]);
    os << line;
  }
  for (const auto &w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

std::string plan_text(const AllocationArtifacts &a) {
  const auto &p = a.result.plan;
  std::ostringstream os;
  os << "TVP floor " << jsonutil::num(a.model.tvp_floor) << ", lead mode denominator "
     << jsonutil::num(a.result.denominator) << ", " << a.result.lead_iterations << " solve(s)\n";
  os << "status " << p.status << ", objective " << fmt("%.6g", p.objective) << "\n";
  for (std::size_t i = 0; i < p.suppliers.size(); ++i) {
    os << "  " << p.suppliers[i] << "  " << fmt("%.6g", p.quantities[i]) << "\n";
  }
  os << "achieved: tvp " << fmt("%.6g", p.achieved.tvp) << ", spend " << fmt("%.8g", p.achieved.spend)
     << ", average lead time " << fmt("%.6g", p.achieved.avg_lead_time) << ", quantity "
     << fmt("%.6g", p.achieved.total_qty) << "\n";
  os << "aspirations: y1 " << fmt("%.8g", p.y1) << ", y2 " << fmt("%.6g", p.y2) << "\n";
  if (a.result.integer_plan) {
    const auto &q = *a.result.integer_plan;
    os << "integer plan (" << q.status << "), objective " << fmt("%.6g", q.objective) << ":";
    for (double x : q.quantities) os << " " << fmt("%.0f", x);
    os << "\n";
  }
  return os.str();
}

// The reference-plan penalty, printed next to every allocation of a dataset
// that carries one.
std::string oracle_line(const Dataset &ds, const AllocationArtifacts &a) {
  if (!ds.mcgp || !ds.mcgp->reference_plan || !a.reference) return {};
  std::string plan;
  for (double q : *ds.mcgp->reference_plan) plan += (plan.empty() ? "" : ", ") + fmt("%.6g", q);
  const auto &ref = *a.reference;
  std::string line = "oracle: reference plan (" + plan + ") penalty " + fmt("%.6g", ref.objective) + ", spend " +
                     fmt("%.8g", ref.achieved.spend) + "; solver objective " +
                     fmt("%.6g", a.result.plan.objective) +
                     (a.result.plan.objective <= ref.objective + 1e-9 ? " <= " : " > ") + "oracle\n";
  return line;
}

std::vector<double> parse_tvp_list(const std::string &spec) {
  std::vector<double> out;
  auto number = [&](const std::string &s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception &) {
      throw UsageError("--tvp-sweep: not a number: '" + s + "'");
    }
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("--tvp-sweep expects start:stop:step");
    const double start = number(parts[0]), stop = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || stop < start) throw UsageError("--tvp-sweep needs step > 0 and stop >= start");
    out = tvp_range(start, stop, step);
  } else {
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  }
  for (double t : out) {
    if (t < 0.0) throw UsageError("--tvp-sweep values must be nonnegative");
  }
  if (out.empty()) throw UsageError("--tvp-sweep is empty");
  return out;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Supplier ranking and order allocation"};
  app.name("sdss");
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "JSON config applied over the dataset manifest");
  app.add_option("--output", g.output, "Write the result to this file (atomically) instead of stdout");
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--seed", g.seed, "Seed for synthetic data and seeded reliability samples");

  std::string dataset;
  PipelineFlags pf;

  auto *validate_cmd = app.add_subcommand("validate", "Check a dataset bundle or document");
  validate_cmd->add_option("dataset", dataset, "Bundle directory or JSON document")->required();

  auto *export_cmd = app.add_subcommand("export", "Write a dataset as one JSON document (the POST /sessions body)");
  export_cmd->add_option("dataset", dataset, "Bundle directory or JSON document")->required();

  auto *rank_cmd = app.add_subcommand("rank", "Fuzzy TOPSIS closeness ranking");
  rank_cmd->add_option("dataset", dataset, "Bundle directory or JSON document")->required();
  std::string group = "all";
  bool csv = false;
  rank_cmd->add_option("--group", group, "Attribute group")->check(CLI::IsMember({"all", "resilience", "cost"}));
  rank_cmd->add_flag("--csv", csv, "CSV output");
  add_pipeline_flags(rank_cmd, pf);

  auto *scri_cmd = app.add_subcommand("scri", "Supply chain risk index over alpha (CSV)");
  scri_cmd->add_option("dataset", dataset, "Bundle directory or JSON document")->required();
  std::optional<double> alpha;
  std::optional<double> sweep;
  auto *alpha_opt = scri_cmd->add_option("--alpha", alpha, "One alpha in [0, 1]")->check(CLI::Range(0.0, 1.0));
  scri_cmd->add_option("--sweep", sweep, "Alpha step in (0, 0.5]; defaults to the dataset's")->excludes(alpha_opt);
  add_pipeline_flags(scri_cmd, pf);

  auto *alloc_cmd = app.add_subcommand("allocate", "Order allocation by goal programming");
  alloc_cmd->add_option("dataset", dataset, "Bundle directory or JSON document")->required();
  std::optional<double> tvp;
  std::string tvp_sweep_spec;
  std::string mode;
  bool integerize = false;
  auto *tvp_opt = alloc_cmd->add_option("--tvp", tvp, "TVP floor")->check(CLI::NonNegativeNumber);
  alloc_cmd->add_option("--tvp-sweep", tvp_sweep_spec, "start:stop:step or a comma list; prints CSV")
      ->excludes(tvp_opt);
  alloc_cmd->add_option("--mode", mode, "Lead-time denominator")->check(CLI::IsMember({"fixed_total", "iterative"}));
  alloc_cmd->add_flag("--integerize", integerize, "Also report a largest-remainder integer plan");
  add_pipeline_flags(alloc_cmd, pf);

  auto *synth_cmd = app.add_subcommand("synth", "Generate a random dataset (bundle with --output DIR, else JSON)");
  std::size_t n_suppliers = 5;
  std::size_t length = 500;
  synth_cmd->add_option("--suppliers", n_suppliers, "Number of suppliers")->check(CLI::Range(1, 1000));
  synth_cmd->add_option("--length", length, "Observations per series")->check(CLI::Range(3, 1000000));

  auto *serve_cmd = app.add_subcommand("serve", "HTTP service");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t max_body = ServiceOptions{}.max_body;
  std::string origin = "*";
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--max-body", max_body, "Largest accepted request body in bytes");
  serve_cmd->add_option("--cors-origin", origin, "Access-Control-Allow-Origin value");

  auto *session_cmd = app.add_subcommand("session", "Session files");
  session_cmd->require_subcommand(1);
  auto *show_cmd = session_cmd->add_subcommand("show", "Summarize a session file and check its hash");
  std::string session_path;
  show_cmd->add_option("file", session_path, "Session JSON")->required();
  auto *save_cmd = session_cmd->add_subcommand("save", "Run the pipeline and write a session file");
  save_cmd->add_option("dataset", dataset, "Bundle directory or JSON document")->required();
  add_pipeline_flags(save_cmd, pf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string result;
  try {
    if (*validate_cmd) {
      auto loaded = load_dataset(dataset);
      if (g.json) {
        ordered_json j;
        j["valid"] = loaded.ok();
        auto list = ordered_json::array();
        for (const auto &v : loaded.violations) {
          list.push_back({{"table", v.table}, {"row", v.row}, {"cell", v.cell}, {"message", v.message}});
        }
        j["violations"] = list;
        result = j.dump(2) + "\n";
      }
      if (loaded.ok()) {
        const auto &ds = loaded.dataset;
        err << dataset << ": valid (" << ds.suppliers.size() << " suppliers, " << ds.attributes.size()
            << " attributes, " << ds.decision_makers.size() << " decision makers)\n";
      } else {
        print_violations(loaded.violations, err);
      }
      if (!result.empty()) {
        if (g.output.empty()) {
          out << result;
        } else {
          write_file_atomic(g.output, result);
        }
      }
      return loaded.ok() ? kExitOk : kExitDomain;
    }

    if (*export_cmd) {
      // Invalid datasets are exported too, so that they can be replayed against the service.
      const auto loaded = load_dataset(dataset);
      if (!loaded.ok()) print_violations(loaded.violations, err);
      result = dataset_to_document(loaded.dataset).dump(2) + "\n";
    } else if (*rank_cmd) {
      const auto ds = prepare(dataset, g, pf, err);
      const auto filter = *parse_group_filter(group);
      const auto ev = evidence_stage(ds);
      const auto ranking = ranking_stage(ds, ev);
      const auto *r = ranking.group(filter);
      if (!r) throw DomainError(std::string("dataset has no ") + group + " attributes");
      if (g.json) {
        result = ranking_view(*r, filter).dump(2) + "\n";
      } else if (csv) {
        result = ranking_csv(*r);
      } else {
        result = ranking_text(*r, filter);
      }
    } else if (*scri_cmd) {
      const auto ds = prepare(dataset, g, pf, err);
      const auto ranking = ranking_stage(ds, evidence_stage(ds));
      if (!ranking.scri_inputs) throw DomainError("SCRI needs both a resilience and a cost attribute");
      std::vector<ScriRow> rows;
      if (alpha) {
        rows = {scri_row(*ranking.scri_inputs, *alpha)};
      } else {
        const double step = sweep.value_or(ds.config.scri_step);
        if (!(step > 0.0 && step <= 0.5)) throw UsageError("--sweep must lie in (0, 0.5]");
        rows = scri_sweep(*ranking.scri_inputs, step);
      }
      result = g.json ? scri_to_json(*ranking.scri_inputs, rows).dump(2) + "\n" : scri_csv(*ranking.scri_inputs, rows);
    } else if (*alloc_cmd) {
      auto ds = prepare(dataset, g, pf, err);
      if (!ds.mcgp) throw UsageError(dataset + " has no mcgp.json; allocate needs an MCGP model");
      if (!mode.empty()) ds.config.lead_mode = *parse_lead_mode(mode);
      if (integerize) ds.config.integerize = true;
      const auto ranking = ranking_stage(ds, evidence_stage(ds));
      if (!tvp_sweep_spec.empty()) {
        const auto tvps = parse_tvp_list(tvp_sweep_spec);
        const auto model = effective_model(*ds.mcgp, ranking);
        AllocationOptions options;
        options.mode = ds.config.lead_mode;
        options.integerize = ds.config.integerize;
        const auto points = tvp_sweep(model, tvps, options);
        if (g.json) {
          auto list = ordered_json::array();
          for (const auto &p : points) {
            list.push_back({{"tvp", jsonutil::num(p.tvp)}, {"plan", plan_to_json(p.result.plan)}});
          }
          result = ordered_json{{"points", list}}.dump(2) + "\n";
        } else {
          result = tvp_sweep_csv(points);
        }
        const auto at_floor = allocation_stage(ds, ranking);
        err << oracle_line(ds, *at_floor);
      } else {
        const auto alloc = tvp ? allocation_what_if(ds, ranking, *tvp) : *allocation_stage(ds, ranking);
        const auto oracle = oracle_line(ds, alloc);
        if (g.json) {
          result = allocation_to_json(alloc).dump(2) + "\n";
          err << oracle;
        } else {
          result = plan_text(alloc) + oracle;
        }
      }
    } else if (*synth_cmd) {
      SynthOptions options;
      options.suppliers = n_suppliers;
      options.seed = g.seed.value_or(0);
      options.series_length = length;
      const auto ds = synthesize(options);
      const bool to_bundle = !g.output.empty() && std::filesystem::path(g.output).extension() != ".json";
      if (to_bundle) {
        save_bundle(ds, g.output);
        err << "wrote bundle " << g.output << "\n";
        return kExitOk;
      }
      result = dataset_to_document(ds).dump(2) + "\n";
    } else if (*serve_cmd) {
      ServiceOptions options;
      options.max_body = max_body;
      options.cors_origin = origin;
      Service service(options);
      err << "listening on http://" << host << ":" << port << "\n";
      serve(service, host, port);
      return kExitOk;
    } else if (*show_cmd) {
      const auto loaded = load_session(session_path);
      for (const auto &w : loaded.warnings) err << "warning: " << w << "\n";
      const auto &s = loaded.session;
      if (g.json) {
        ordered_json j;
        j["verified"] = loaded.warnings.empty();
        j["warnings"] = loaded.warnings;
        j["session"] = session_to_json(s);
        result = j.dump(2) + "\n";
      } else {
        std::ostringstream os;
        const auto doc = session_to_json(s);
        os << "dataset " << s.dataset.name << ", created " << s.created << "\n";
        os << "hash " << doc["hash"].get<std::string>() << (loaded.warnings.empty() ? " (verified)" : " (MISMATCH)")
           << "\n";
        os << ranking_text(s.artifacts.ranking.all, GroupFilter::all);
        if (s.artifacts.allocation) os << plan_text(*s.artifacts.allocation) << oracle_line(s.dataset, *s.artifacts.allocation);
        result = os.str();
      }
    } else if (*save_cmd) {
      const auto ds = prepare(dataset, g, pf, err);
      result = session_to_json(make_session(ds)).dump(2) + "\n";
    }
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StageError &e) {
    err << "stage " << e.stage() << " failed: " << e.what() << "\n";
    return kExitDomain;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const NumericError &e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitDomain;
  }

  try {
    if (g.output.empty()) {
      out << result;
    } else {
      write_file_atomic(g.output, result);
    }
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace sdss
