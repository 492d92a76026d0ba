#pragma once

#include <filesystem>
#include <stdexcept>

#include "sdss/dataset.h"

namespace fixtures {

inline std::filesystem::path data_dir() { return SDSS_DATA_DIR; }

/// Loads a shipped bundle and insists it validates.
inline sdss::Dataset load(const char *name) {
  auto res = sdss::load_dataset(data_dir() / name);
  if (!res.ok()) throw std::runtime_error(std::string(name) + ": " + res.violations.front().to_string());
  return res.dataset;
}

inline const sdss::Dataset &paper_case() {
  static const sdss::Dataset ds = load("paper-case");
  return ds;
}

}  // namespace fixtures
