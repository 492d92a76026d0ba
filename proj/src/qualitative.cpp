#include "sdss/qualitative.h"

#include <algorithm>
#include <map>

#include "sdss/error.h"

namespace sdss {

Tfn term_to_tfn(std::string_view term, const LinguisticScale &scale, std::string_view where) {
  if (auto t = scale.find(term)) return *t;
  std::string msg;
  if (!where.empty()) msg.append(where).append(": ");
  msg.append("unknown term '").append(term).append("' for scale ").append(scale.name());
  throw DomainError(msg);
}

Tfn aggregate_dms(std::span<const Tfn> tfns) {
  if (tfns.empty()) throw DomainError("cannot aggregate an empty list of assessments");
  Tfn out{tfns.front().a, 0.0, tfns.front().c};
  for (const auto &t : tfns) {
    out.a = std::min(out.a, t.a);
    out.b += t.b;
    out.c = std::max(out.c, t.c);
  }
  out.b /= static_cast<double>(tfns.size());
  return out;
}

namespace {

template <class Row, class Where>
Tfn build_cell(std::span<const Row> rows, std::span<const std::string> dms, const LinguisticScale &scale,
               Where where) {
  std::map<std::string, const Row *> by_dm;
  for (const auto &r : rows) {
    if (!by_dm.emplace(r.dm, &r).second) throw DomainError(where(r.dm) + ": duplicate assessment");
  }
  std::vector<Tfn> tfns;
  tfns.reserve(dms.size());
  for (const auto &dm : dms) {
    auto it = by_dm.find(dm);
    if (it == by_dm.end()) throw DomainError(where(dm) + ": missing assessment");
    tfns.push_back(term_to_tfn(it->second->term, scale, where(dm)));
    by_dm.erase(it);
  }
  if (!by_dm.empty()) throw DomainError(where(by_dm.begin()->first) + ": assessment from an unregistered DM");
  return aggregate_dms(tfns);
}

}  // namespace

Tfn build_qualitative_tfn(std::span<const Appraisal> cell, std::span<const std::string> dms,
                          const LinguisticScale &scale) {
  if (cell.empty()) throw DomainError("no appraisals for cell");
  const std::string supplier = cell.front().supplier;
  const std::string attribute = cell.front().attribute;
  for (const auto &a : cell) {
    if (a.supplier != supplier || a.attribute != attribute) throw DomainError("appraisals span several cells");
  }
  return build_cell(cell, dms, scale,
                    [&](const std::string &dm) { return "(" + supplier + ", " + attribute + ", " + dm + ")"; });
}

Tfn build_weight_tfn(std::span<const WeightJudgment> judgments, std::span<const std::string> dms,
                     const LinguisticScale &scale) {
  if (judgments.empty()) throw DomainError("no weight judgments for attribute");
  const std::string attribute = judgments.front().attribute;
  for (const auto &w : judgments) {
    if (w.attribute != attribute) throw DomainError("weight judgments span several attributes");
  }
  return build_cell(judgments, dms, scale,
                    [&](const std::string &dm) { return "(" + attribute + ", " + dm + ")"; });
}

}  // namespace sdss
