#pragma once

#include <cstddef>
#include <cstdint>

#include "sdss/dataset.h"

namespace sdss {

struct SynthOptions {
  std::size_t suppliers = 5;
  std::uint64_t seed = 0;
  std::size_t series_length = 500;
  std::size_t decision_makers = 5;
  std::size_t ranges_per_cell = 10;
};

/// A random but valid dataset: two temporal attributes with triangular
/// series, two granular attributes with ranges, six linguistic attributes and
/// an MCGP model fed by the ranking. Same options, same dataset.
Dataset synthesize(const SynthOptions &options);

}  // namespace sdss
