#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdss/pipeline.h"

namespace sdss {

inline constexpr int kSessionVersion = 1;

/// A dataset snapshot with everything computed from it.
struct Session {
  Dataset dataset;
  Artifacts artifacts;
  std::string created;  ///< UTC, ISO 8601; excluded from hashes
};

Session make_session(const Dataset &dataset);

nlohmann::ordered_json ranking_to_json(const RankingResult &ranking);
/// ranking_to_json plus the group name and the sum-normalized closeness; the
/// payload shared by `sdss rank --json` and the service.
nlohmann::ordered_json ranking_view(const RankingResult &ranking, GroupFilter group);
/// CSV with header `supplier,d_plus,d_minus,closeness,normalized,rank`.
std::string ranking_csv(const RankingResult &ranking);
nlohmann::ordered_json scri_to_json(const ScriInputs &inputs, const std::vector<ScriRow> &rows);
nlohmann::ordered_json plan_to_json(const AllocationPlan &plan);
nlohmann::ordered_json allocation_to_json(const AllocationArtifacts &allocation);
nlohmann::ordered_json evidence_to_json(const EvidenceArtifacts &evidence);
nlohmann::ordered_json artifacts_to_json(const Artifacts &artifacts);
Artifacts artifacts_from_json(const nlohmann::json &j);

/// SHA-256 over the compact dump of a JSON value.
std::string json_hash(const nlohmann::ordered_json &j);

nlohmann::ordered_json session_to_json(const Session &session);

struct LoadedSession {
  Session session;
  std::vector<std::string> warnings;  ///< integrity problems; the session is still returned
};

/// Throws IoError for a malformed document or an unsupported version.
LoadedSession session_from_json(const nlohmann::json &j);

/// Writes through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path &path, const std::string &text);
void save_session(const Session &session, const std::filesystem::path &path);
LoadedSession load_session(const std::filesystem::path &path);

}  // namespace sdss
