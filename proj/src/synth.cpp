#include "sdss/synth.h"

#include <cmath>
#include <random>

#include "sdss/error.h"

namespace sdss {

namespace {

// std distributions are implementation-defined; this keeps bundles identical
// across standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0.0, static_cast<double>(n))) % n; }
  std::uint64_t next() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

double round_to(double v, double unit) { return std::round(v / unit) / (1.0 / unit); }

// Recorded to two decimals, so a bundle written from them reads back exactly.
std::vector<double> readings(const Tfn &params, std::size_t n, std::uint64_t seed) {
  auto out = triangular_series(params, n, seed);
  for (double &v : out) v = round_to(v, 0.01);
  return out;
}

}  // namespace

Dataset synthesize(const SynthOptions &opt) {
  if (opt.suppliers == 0) throw DomainError("synth needs at least one supplier");
  if (opt.decision_makers == 0) throw DomainError("synth needs at least one decision maker");
  if (opt.series_length < 3) throw DomainError("synth series need at least 3 observations");
  if (opt.ranges_per_cell == 0) throw DomainError("synth needs at least one range per cell");
  Draw draw(opt.seed);

  Dataset ds;
  ds.name = "synth-" + std::to_string(opt.suppliers) + "-" + std::to_string(opt.seed);
  for (std::size_t i = 0; i < opt.suppliers; ++i) {
    const auto id = "S" + std::to_string(i + 1);
    ds.suppliers.push_back({id, "Supplier " + std::to_string(i + 1)});
  }
  for (std::size_t k = 0; k < opt.decision_makers; ++k) ds.decision_makers.push_back("DM" + std::to_string(k + 1));

  struct Def {
    const char *id;
    const char *name;
    EvidenceKind kind;
    Objective objective;
    Group group;
  };
  const Def defs[] = {
      {"C1", "Inventory level", EvidenceKind::temporal, Objective::max, Group::resilience},
      {"C2", "Lead time", EvidenceKind::temporal, Objective::min, Group::resilience},
      {"C3", "Capacity", EvidenceKind::granular, Objective::max, Group::resilience},
      {"C4", "Cost", EvidenceKind::granular, Objective::min, Group::cost},
      {"C5", "Digitalization", EvidenceKind::linguistic, Objective::max, Group::resilience},
      {"C6", "Traceability", EvidenceKind::linguistic, Objective::max, Group::resilience},
      {"C7", "Network density", EvidenceKind::linguistic, Objective::min, Group::resilience},
      {"C8", "Reliability", EvidenceKind::linguistic, Objective::max, Group::resilience},
      {"C9", "Visibility", EvidenceKind::linguistic, Objective::max, Group::resilience},
      {"C10", "Agility", EvidenceKind::linguistic, Objective::max, Group::resilience},
  };
  for (const auto &d : defs) ds.attributes.push_back({Attribute{d.id, d.name, d.kind, d.objective, d.group}, {}});

  const auto ids = ds.supplier_ids();
  std::uint64_t series_seed = draw.next();
  for (const auto &s : ids) {
    // Parameter ranges follow a typical inventory level and lead time in days.
    const double inv_b = draw.uniform(410.0, 470.0);
    const Tfn inv{round_to(inv_b - draw.uniform(10.0, 25.0), 0.01), round_to(inv_b, 0.01),
                  round_to(inv_b + draw.uniform(8.0, 22.0), 0.01)};
    const double lead_b = draw.uniform(8.0, 15.0);
    const Tfn lead{round_to(lead_b - draw.uniform(1.5, 4.0), 0.01), round_to(lead_b, 0.01),
                   round_to(lead_b + draw.uniform(1.5, 4.0), 0.01)};
    ds.series.push_back({s, "C1", readings(inv, opt.series_length, series_seed++)});
    ds.series.push_back({s, "C2", readings(lead, opt.series_length, series_seed++)});
  }
  for (const auto &s : ids) {
    const double cap = draw.uniform(70.0, 130.0);
    const double cost = draw.uniform(350.0, 500.0);
    RangeEntry c3{s, "C3", {}}, c4{s, "C4", {}};
    for (std::size_t r = 0; r < opt.ranges_per_cell; ++r) {
      const double p3 = std::round(cap - draw.uniform(2.0, 20.0));
      c3.ranges.push_back({p3, p3 + std::round(draw.uniform(15.0, 40.0))});
      const double p4 = std::round(cost - draw.uniform(5.0, 60.0));
      c4.ranges.push_back({p4, p4 + std::round(draw.uniform(40.0, 150.0))});
    }
    ds.ranges.push_back(std::move(c3));
    ds.ranges.push_back(std::move(c4));
  }

  const auto &perf = ds.performance.entries();
  const auto &wt = ds.weight.entries();
  for (const auto &a : ds.attributes) {
    if (a.attribute.kind != EvidenceKind::linguistic) continue;
    for (const auto &s : ids) {
      // Each supplier sits around its own level; DMs scatter one term either side.
      const auto centre = 2 + draw.index(perf.size() - 4);
      for (const auto &dm : ds.decision_makers) {
        const auto k = centre + draw.index(3) - 1;
        ds.appraisals.push_back({s, a.attribute.id, dm, perf[k].term});
      }
    }
  }
  for (const auto &a : ds.attributes) {
    const auto centre = 3 + draw.index(wt.size() - 4);
    for (const auto &dm : ds.decision_makers) {
      ds.weights.push_back({a.attribute.id, dm, wt[centre + draw.index(3) - 1].term});
    }
  }

  McgpSpec spec;
  spec.source = CoefficientSource::ranking;
  for (const auto &s : ids) {
    spec.model.suppliers.push_back(
        {s, 0.0, std::round(draw.uniform(450.0, 1000.0)), round_to(draw.uniform(8.0, 15.0), 0.01)});
  }
  const double q = 100.0 * static_cast<double>(opt.suppliers);
  spec.model.quantity = q;
  spec.model.tvp_floor = round_to(0.4 * q, 1.0);
  spec.model.budget = {600.0 * q, 500.0 * q, 700.0 * q};
  spec.model.lead = {10.0, 10.0, 12.0};
  ds.mcgp = std::move(spec);
  return ds;
}

}  // namespace sdss
