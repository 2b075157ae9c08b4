#pragma once

#include <ostream>

namespace eulerconf::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kTolerance = 3;
inline constexpr int kMismatch = 4;

/// Worker threads for grid scans; sequential when unset.
inline constexpr const char* kWorkersVariable = "EULERCONF_WORKERS";

/// Runs the command line; results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eulerconf::cli
