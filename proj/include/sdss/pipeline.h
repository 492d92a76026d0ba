#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdss/dataset.h"

namespace sdss {

struct TemporalAudit {
  std::string supplier;
  std::string attribute;
  Tfn tfn;
  std::size_t bins = 0;
  double mode_x = 0.0;
  std::vector<std::string> warnings;

  friend bool operator==(const TemporalAudit &, const TemporalAudit &) = default;
};

struct GranularAudit {
  std::string attribute;
  int classes = 0;
  double lo = 0.0;
  double hi = 0.0;
  ReliabilityReport reliability;
  std::vector<std::string> suppliers;
  std::vector<MembershipRow> normalized;  ///< one per supplier
  std::vector<Tfn> tfns;                  ///< one per supplier

  friend bool operator==(const GranularAudit &, const GranularAudit &) = default;
};

/// Steps 1 and 2: every cell TFN and every attribute weight.
struct EvidenceArtifacts {
  DecisionMatrix matrix;
  std::vector<std::string> sources;  ///< row-major: override, temporal, granular or linguistic
  std::vector<TemporalAudit> temporal;
  std::vector<GranularAudit> granular;
  std::vector<std::string> warnings;

  friend bool operator==(const EvidenceArtifacts &, const EvidenceArtifacts &) = default;
};

/// Step 3 on all attributes and on each group, plus the SCRI sweep when both
/// groups are present.
struct RankingArtifacts {
  RankingResult all;
  std::optional<RankingResult> resilience;
  std::optional<RankingResult> cost;
  std::optional<ScriInputs> scri_inputs;
  std::vector<ScriRow> scri;
  std::vector<std::string> warnings;

  const RankingResult *group(GroupFilter filter) const;

  friend bool operator==(const RankingArtifacts &, const RankingArtifacts &) = default;
};

/// Step 4.
struct AllocationArtifacts {
  McgpModel model;  ///< with the coefficients actually used
  AllocationResult result;
  std::optional<PlanEvaluation> reference;

  friend bool operator==(const AllocationArtifacts &, const AllocationArtifacts &) = default;
};

struct Artifacts {
  EvidenceArtifacts evidence;
  RankingArtifacts ranking;
  std::optional<AllocationArtifacts> allocation;

  friend bool operator==(const Artifacts &, const Artifacts &) = default;
};

/// Stage functions throw StageError naming the stage and the cell.
EvidenceArtifacts evidence_stage(const Dataset &dataset);
RankingArtifacts ranking_stage(const Dataset &dataset, const EvidenceArtifacts &evidence);
std::optional<AllocationArtifacts> allocation_stage(const Dataset &dataset, const RankingArtifacts &ranking);

/// Requires a valid dataset (throws DomainError listing the first violations otherwise).
Artifacts run_pipeline(const Dataset &dataset);

/// The MCGP model fed to the solver: the stored model, with its coefficients
/// replaced by the ranking closeness when the coefficient source says so.
McgpModel effective_model(const McgpSpec &spec, const RankingArtifacts &ranking);

/// Allocation for a different TVP floor without touching the dataset.
AllocationArtifacts allocation_what_if(const Dataset &dataset, const RankingArtifacts &ranking, double tvp);

}  // namespace sdss
