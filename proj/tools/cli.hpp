#pragma once

#include <iosfwd>

namespace mest::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kDegenerateMath = 3,
  kSimulationFailure = 4,
};

/// Runs the `mest` command line (analyze | simulate | weights) writing the
/// report to `out` (unless --out is given) and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mest::cli
