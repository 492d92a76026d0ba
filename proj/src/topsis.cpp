#include "sdss/topsis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "sdss/error.h"

namespace sdss {

const char *to_string(EvidenceKind v) noexcept {
  switch (v) {
    case EvidenceKind::temporal:
      return "temporal";
    case EvidenceKind::granular:
      return "granular";
    case EvidenceKind::linguistic:
      return "linguistic";
  }
  return "?";
}

const char *to_string(Objective v) noexcept { return v == Objective::max ? "max" : "min"; }
const char *to_string(Group v) noexcept { return v == Group::cost ? "cost" : "resilience"; }

const char *to_string(GroupFilter v) noexcept {
  switch (v) {
    case GroupFilter::all:
      return "all";
    case GroupFilter::resilience:
      return "resilience";
    case GroupFilter::cost:
      return "cost";
  }
  return "?";
}

const char *to_string(DistanceVariant v) noexcept {
  return v == DistanceVariant::paper ? "paper" : "per_attribute";
}

std::optional<EvidenceKind> parse_evidence_kind(std::string_view s) {
  if (s == "temporal") return EvidenceKind::temporal;
  if (s == "granular") return EvidenceKind::granular;
  if (s == "linguistic") return EvidenceKind::linguistic;
  return std::nullopt;
}

std::optional<Objective> parse_objective(std::string_view s) {
  if (s == "max") return Objective::max;
  if (s == "min") return Objective::min;
  return std::nullopt;
}

std::optional<Group> parse_group(std::string_view s) {
  if (s == "resilience") return Group::resilience;
  if (s == "cost") return Group::cost;
  return std::nullopt;
}

std::optional<GroupFilter> parse_group_filter(std::string_view s) {
  if (s == "all") return GroupFilter::all;
  if (s == "resilience") return GroupFilter::resilience;
  if (s == "cost") return GroupFilter::cost;
  return std::nullopt;
}

std::optional<DistanceVariant> parse_distance_variant(std::string_view s) {
  if (s == "paper") return DistanceVariant::paper;
  if (s == "per_attribute") return DistanceVariant::per_attribute;
  return std::nullopt;
}

void DecisionMatrix::validate() const {
  if (suppliers.empty()) throw DomainError("decision matrix has no suppliers");
  if (attributes.empty()) throw DomainError("decision matrix has no attributes");
  if (cells.size() != rows() * cols()) throw DomainError("decision matrix is incomplete");
  if (weights.size() != cols()) throw DomainError("one weight per attribute is required");
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) {
      if (!cell(i, j).valid()) {
        throw DomainError("invalid TFN at (" + suppliers[i] + ", " + attributes[j].id + ")");
      }
    }
  }
  for (std::size_t j = 0; j < cols(); ++j) {
    const auto &w = weights[j];
    if (!w.valid() || w.a < 0.0 || w.c > 1.0) throw DomainError("weight of " + attributes[j].id + " leaves [0,1]");
  }
}

DecisionMatrix restrict_to(const DecisionMatrix &matrix, GroupFilter filter) {
  if (filter == GroupFilter::all) return matrix;
  const Group wanted = filter == GroupFilter::cost ? Group::cost : Group::resilience;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    if (matrix.attributes[j].group == wanted) keep.push_back(j);
  }
  DecisionMatrix out;
  out.suppliers = matrix.suppliers;
  for (auto j : keep) {
    out.attributes.push_back(matrix.attributes[j]);
    out.weights.push_back(matrix.weights[j]);
  }
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (auto j : keep) out.cells.push_back(matrix.cell(i, j));
  }
  return out;
}

DecisionMatrix normalize(const DecisionMatrix &matrix) {
  matrix.validate();
  DecisionMatrix out = matrix;
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    const auto &attr = matrix.attributes[j];
    if (attr.objective == Objective::max) {
      double top = 0.0;
      for (std::size_t i = 0; i < matrix.rows(); ++i) top = std::max(top, matrix.cell(i, j).c);
      if (!(top > 0.0)) throw DomainError("benefit column " + attr.id + " has no positive value");
      for (std::size_t i = 0; i < matrix.rows(); ++i) {
        const auto &t = matrix.cell(i, j);
        out.cell(i, j) = Tfn{t.a / top, t.b / top, t.c / top};
      }
    } else {
      double floor = matrix.cell(0, j).a;
      for (std::size_t i = 0; i < matrix.rows(); ++i) {
        const auto &t = matrix.cell(i, j);
        if (!(t.a > 0.0)) {
          throw DomainError("cost attribute cell (" + matrix.suppliers[i] + ", " + attr.id + ") has a <= 0");
        }
        floor = std::min(floor, t.a);
      }
      for (std::size_t i = 0; i < matrix.rows(); ++i) {
        const auto &t = matrix.cell(i, j);
        out.cell(i, j) = Tfn{floor / t.c, floor / t.b, floor / t.a};
      }
    }
  }
  return out;
}

DecisionMatrix apply_weights(const DecisionMatrix &normalized) {
  DecisionMatrix out = normalized;
  for (std::size_t i = 0; i < normalized.rows(); ++i) {
    for (std::size_t j = 0; j < normalized.cols(); ++j) out.cell(i, j) = mul(normalized.cell(i, j), normalized.weights[j]);
  }
  return out;
}

IdealSolutions ideal_solutions(const DecisionMatrix &weighted) {
  IdealSolutions ideal;
  for (std::size_t j = 0; j < weighted.cols(); ++j) {
    double best = weighted.cell(0, j).c;
    double worst = weighted.cell(0, j).a;
    for (std::size_t i = 0; i < weighted.rows(); ++i) {
      best = std::max(best, weighted.cell(i, j).c);
      worst = std::min(worst, weighted.cell(i, j).a);
    }
    ideal.pis.push_back(crisp(best));
    ideal.nis.push_back(crisp(worst));
  }
  return ideal;
}

std::vector<double> RankingResult::closeness() const {
  std::vector<double> out;
  for (const auto &s : scores) out.push_back(s.closeness);
  return out;
}

std::vector<double> RankingResult::normalized_closeness() const {
  auto out = closeness();
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  if (!(total > 0.0)) throw DomainError("closeness coefficients sum to zero");
  for (double &v : out) v /= total;
  return out;
}

std::vector<std::string> RankingResult::order() const {
  std::vector<std::string> out(scores.size());
  for (const auto &s : scores) out[static_cast<std::size_t>(s.rank - 1)] = s.supplier;
  return out;
}

RankingResult closeness(const DecisionMatrix &weighted, const IdealSolutions &ideal, DistanceVariant variant) {
  RankingResult result;
  result.ideal = ideal;
  result.variant = variant;
  for (const auto &a : weighted.attributes) result.attributes.push_back(a.id);
  std::vector<double> pis, nis;
  for (std::size_t j = 0; j < weighted.cols(); ++j) {
    pis.push_back(ideal.pis[j].c);
    nis.push_back(ideal.nis[j].a);
  }
  const auto dist = kernels::omp::ideal_distances(weighted.cells, weighted.cols(), pis, nis, variant);
  for (std::size_t i = 0; i < weighted.rows(); ++i) {
    SupplierScore s{weighted.suppliers[i], dist[i].plus, dist[i].minus, 0.0, 0};
    const double total = s.d_plus + s.d_minus;
    if (weighted.rows() == 1) {
      s.closeness = 0.5;
      result.warnings.push_back("single supplier: closeness is degenerate and set to 0.5");
    } else if (total == 0.0) {
      s.closeness = 0.5;
      result.warnings.push_back(s.supplier + ": d+ + d- = 0, closeness set to 0.5");
    } else {
      s.closeness = s.d_minus / total;
    }
    result.scores.push_back(std::move(s));
  }
  std::vector<std::size_t> idx(result.scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return result.scores[x].closeness > result.scores[y].closeness;
  });
  for (std::size_t r = 0; r < idx.size(); ++r) result.scores[idx[r]].rank = static_cast<int>(r + 1);
  return result;
}

RankingResult rank(const DecisionMatrix &matrix, DistanceVariant variant) {
  const auto weighted = apply_weights(normalize(matrix));
  return closeness(weighted, ideal_solutions(weighted), variant);
}

ScriInputs scri_inputs(const DecisionMatrix &matrix, DistanceVariant variant) {
  const auto resilience = restrict_to(matrix, GroupFilter::resilience);
  const auto cost = restrict_to(matrix, GroupFilter::cost);
  if (resilience.cols() == 0 || cost.cols() == 0) {
    throw DomainError("SCRI needs at least one resilience and one cost attribute");
  }
  return ScriInputs{matrix.suppliers, rank(resilience, variant).normalized_closeness(),
                    rank(cost, variant).normalized_closeness()};
}

std::vector<double> scri(const ScriInputs &inputs, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  std::vector<double> out(inputs.suppliers.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = alpha * inputs.resilience[i] + (1.0 - alpha) * inputs.cost[i];
  }
  return out;
}

ScriRow scri_row(const ScriInputs &inputs, double alpha) {
  ScriRow row;
  row.alpha = alpha;
  row.values = scri(inputs, alpha);
  row.argmax = static_cast<std::size_t>(std::max_element(row.values.begin(), row.values.end()) - row.values.begin());
  return row;
}

std::vector<ScriRow> scri_sweep(const ScriInputs &inputs, double step) {
  if (!(step > 0.0 && step <= 0.5)) throw DomainError("alpha step must lie in (0, 0.5]");
  std::vector<double> alphas;
  for (int k = 1;; ++k) {
    const double alpha = k * step;
    if (alpha >= 1.0 - 1e-9) break;
    alphas.push_back(alpha);
  }
  std::vector<ScriRow> rows(alphas.size());
  kernels::for_each_index(alphas.size(), [&](std::size_t k) { rows[k] = scri_row(inputs, alphas[k]); });
  return rows;
}

std::string scri_csv(const ScriInputs &inputs, const std::vector<ScriRow> &rows) {
  std::string out = "alpha,supplier,scri,is_argmax\n";
  char buf[160];
  for (const auto &row : rows) {
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.6g,%s,%.12g,%d\n", row.alpha, inputs.suppliers[i].c_str(), row.values[i],
                    i == row.argmax ? 1 : 0);
      out += buf;
    }
  }
  return out;
}

}  // namespace sdss
