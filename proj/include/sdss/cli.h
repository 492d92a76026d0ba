#pragma once

#include <ostream>

namespace sdss {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `sdss` command line. Returns 0 on success, 1 for a domain
/// violation and 2 for usage or I/O errors.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace sdss
