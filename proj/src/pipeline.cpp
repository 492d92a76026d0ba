#include "sdss/pipeline.h"

#include <algorithm>
#include <map>

#include "sdss/error.h"

namespace sdss {

const RankingResult *RankingArtifacts::group(GroupFilter filter) const {
  switch (filter) {
    case GroupFilter::all:
      return &all;
    case GroupFilter::resilience:
      return resilience ? &*resilience : nullptr;
    case GroupFilter::cost:
      return cost ? &*cost : nullptr;
  }
  return nullptr;
}

namespace {

using CellKey = std::pair<std::string, std::string>;

std::string cell_name(const std::string &supplier, const std::string &attribute) {
  return "(" + supplier + ", " + attribute + ")";
}

template <class Body>
auto in_stage(const char *stage, const std::string &where, Body body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError &) {
    throw;
  } catch (const DomainError &e) {
    throw StageError(stage, where.empty() ? std::string(e.what()) : where + ": " + e.what());
  } catch (const NumericError &e) {
    throw StageError(stage, where.empty() ? std::string(e.what()) : where + ": " + e.what());
  }
}

}  // namespace

EvidenceArtifacts evidence_stage(const Dataset &ds) {
  EvidenceArtifacts ev;
  auto &m = ev.matrix;
  m.suppliers = ds.supplier_ids();
  for (const auto &a : ds.attributes) m.attributes.push_back(a.attribute);
  m.cells.assign(m.rows() * m.cols(), Tfn{});
  ev.sources.assign(m.cells.size(), std::string());

  std::map<CellKey, const SeriesEntry *> series;
  for (const auto &s : ds.series) series[{s.supplier, s.attribute}] = &s;
  std::map<CellKey, const RangeEntry *> ranges;
  for (const auto &r : ds.ranges) ranges[{r.supplier, r.attribute}] = &r;
  std::map<CellKey, Tfn> overrides;
  for (const auto &o : ds.overrides) overrides[{o.supplier, o.attribute}] = o.tfn;
  auto use_override = [&](const CellKey &key) {
    if (!overrides.count(key)) return false;
    if (!ds.config.from_raw) return true;
    return !series.count(key) && !ranges.count(key);
  };

  // Granular attributes that need extraction share one reliability normalization.
  struct GranularWork {
    std::size_t col;
    Frame frame;
    std::vector<double> samples;
  };
  std::vector<GranularWork> granular;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto &spec = ds.attributes[j];
    if (spec.attribute.kind != EvidenceKind::granular) continue;
    bool needed = false;
    std::vector<Range> all;
    for (const auto &s : m.suppliers) {
      const CellKey key{s, spec.attribute.id};
      if (auto it = ranges.find(key); it != ranges.end()) {
        all.insert(all.end(), it->second->ranges.begin(), it->second->ranges.end());
        if (!use_override(key)) needed = true;
      }
    }
    if (!needed) continue;
    in_stage("granular", spec.attribute.id, [&] {
      double lo = all.front().p, hi = all.front().q;
      for (const auto &r : all) {
        lo = std::min(lo, r.p);
        hi = std::max(hi, r.q);
      }
      auto frame = fuzzify_frame(lo, hi, spec.classes.value_or(ds.config.frame_classes));
      auto samples = reliability_samples(frame, all, ds.config.reliability);
      granular.push_back({j, std::move(frame), std::move(samples)});
    });
  }
  std::vector<ReliabilityReport> reports;
  if (!granular.empty()) {
    std::vector<Frame> frames;
    std::vector<std::vector<double>> samples;
    for (const auto &g : granular) {
      frames.push_back(g.frame);
      samples.push_back(g.samples);
    }
    reports = in_stage("granular", "", [&] { return reliability_reports(frames, samples); });
  }
  for (std::size_t g = 0; g < granular.size(); ++g) {
    const auto &work = granular[g];
    const auto &attr = m.attributes[work.col];
    GranularAudit audit;
    audit.attribute = attr.id;
    audit.classes = static_cast<int>(work.frame.class_count());
    audit.lo = work.frame.lo();
    audit.hi = work.frame.hi();
    audit.reliability = reports[g];
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const CellKey key{m.suppliers[i], attr.id};
      if (use_override(key)) continue;
      auto it = ranges.find(key);
      if (it == ranges.end()) continue;
      const auto ex = in_stage("granular", cell_name(key.first, key.second), [&] {
        return extract_detailed(work.frame, RangeSet{it->second->ranges}, reports[g]);
      });
      m.cell(i, work.col) = ex.tfn;
      ev.sources[i * m.cols() + work.col] = "granular";
      audit.suppliers.push_back(key.first);
      audit.normalized.push_back(ex.normalized);
      audit.tfns.push_back(ex.tfn);
    }
    ev.granular.push_back(std::move(audit));
  }

  const InductionOptions induction{ds.config.bins, ds.config.fit};
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto &spec = ds.attributes[j];
    const auto &attr = spec.attribute;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const CellKey key{m.suppliers[i], attr.id};
      const auto where = cell_name(key.first, key.second);
      auto &source = ev.sources[i * m.cols() + j];
      if (attr.kind == EvidenceKind::linguistic) {
        std::vector<Appraisal> cell;
        for (const auto &a : ds.appraisals) {
          if (a.supplier == key.first && a.attribute == attr.id) cell.push_back(a);
        }
        m.cell(i, j) = in_stage("qualitative", where, [&] {
          return build_qualitative_tfn(cell, ds.decision_makers, ds.performance);
        });
        source = "linguistic";
      } else if (use_override(key)) {
        m.cell(i, j) = overrides.at(key);
        source = "override";
      } else if (attr.kind == EvidenceKind::temporal) {
        auto it = series.find(key);
        if (it == series.end()) throw StageError("temporal", where + ": no series");
        const auto ind = in_stage("temporal", where, [&] { return induce(it->second->values, induction); });
        m.cell(i, j) = ind.tfn;
        source = "temporal";
        for (const auto &w : ind.warnings) ev.warnings.push_back(where + ": " + w);
        ev.temporal.push_back({key.first, attr.id, ind.tfn, ind.estimate.bin_count, ind.estimate.mode_x, ind.warnings});
      } else if (source.empty()) {
        throw StageError("granular", where + ": no ranges");
      }
    }
  }

  for (const auto &spec : ds.attributes) {
    std::vector<WeightJudgment> judgments;
    for (const auto &w : ds.weights) {
      if (w.attribute == spec.attribute.id) judgments.push_back(w);
    }
    m.weights.push_back(in_stage("weights", spec.attribute.id, [&] {
      return build_weight_tfn(judgments, ds.decision_makers, ds.weight);
    }));
  }
  return ev;
}

RankingArtifacts ranking_stage(const Dataset &ds, const EvidenceArtifacts &evidence) {
  RankingArtifacts out;
  const auto variant = ds.config.distance;
  out.all = in_stage("topsis", "", [&] { return rank(evidence.matrix, variant); });
  auto res = restrict_to(evidence.matrix, GroupFilter::resilience);
  auto cost = restrict_to(evidence.matrix, GroupFilter::cost);
  if (res.cols() > 0) out.resilience = in_stage("topsis", "resilience group", [&] { return rank(res, variant); });
  if (cost.cols() > 0) out.cost = in_stage("topsis", "cost group", [&] { return rank(cost, variant); });
  out.warnings = out.all.warnings;
  if (out.resilience && out.cost) {
    out.scri_inputs = in_stage("scri", "", [&] {
      return ScriInputs{evidence.matrix.suppliers, out.resilience->normalized_closeness(),
                        out.cost->normalized_closeness()};
    });
    out.scri = in_stage("scri", "", [&] { return scri_sweep(*out.scri_inputs, ds.config.scri_step); });
  } else {
    out.warnings.push_back("SCRI skipped: it needs both a resilience and a cost attribute");
  }
  return out;
}

McgpModel effective_model(const McgpSpec &spec, const RankingArtifacts &ranking) {
  McgpModel model = spec.model;
  if (spec.source == CoefficientSource::ranking) {
    std::map<std::string, double> rho;
    for (const auto &s : ranking.all.scores) rho[s.supplier] = s.closeness;
    for (auto &s : model.suppliers) {
      auto it = rho.find(s.id);
      if (it == rho.end()) throw StageError("mcgp", "(" + s.id + "): no closeness coefficient");
      s.coeff = it->second;
    }
  }
  return model;
}

namespace {

AllocationArtifacts allocate(const Dataset &ds, McgpModel model) {
  AllocationArtifacts out;
  const auto &spec = *ds.mcgp;
  out.model = std::move(model);
  AllocationOptions options;
  options.mode = ds.config.lead_mode;
  options.integerize = ds.config.integerize;
  out.result = in_stage("mcgp", "", [&] { return solve_allocation(out.model, options); });
  if (spec.reference_plan) {
    const auto &plan = *spec.reference_plan;
    double denom = out.model.quantity;
    if (ds.config.lead_mode == LeadMode::iterative) {
      denom = 0.0;
      for (double q : plan) denom += q;
    }
    out.reference = in_stage("mcgp", "reference plan", [&] { return evaluate_plan(out.model, plan, denom); });
  }
  return out;
}

}  // namespace

std::optional<AllocationArtifacts> allocation_stage(const Dataset &ds, const RankingArtifacts &ranking) {
  if (!ds.mcgp) return std::nullopt;
  return allocate(ds, effective_model(*ds.mcgp, ranking));
}

AllocationArtifacts allocation_what_if(const Dataset &ds, const RankingArtifacts &ranking, double tvp) {
  if (!ds.mcgp) throw DomainError("dataset has no MCGP model");
  auto model = effective_model(*ds.mcgp, ranking);
  model.tvp_floor = tvp;
  return allocate(ds, std::move(model));
}

Artifacts run_pipeline(const Dataset &ds) {
  const auto violations = validate(ds);
  if (!violations.empty()) {
    std::string msg = "dataset has " + std::to_string(violations.size()) + " violation(s); first: ";
    throw DomainError(msg + violations.front().to_string());
  }
  Artifacts out;
  out.evidence = evidence_stage(ds);
  out.ranking = ranking_stage(ds, out.evidence);
  out.allocation = allocation_stage(ds, out.ranking);
  return out;
}

}  // namespace sdss
