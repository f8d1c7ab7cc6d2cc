#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace etflab::cli {

/// Exit codes of the etflab binary.
enum ExitCode : int { kSuccess = 0, kUsageError = 1, kNumericError = 2 };

/// Runs one etflab invocation. argv[0] is the program name. Writes the
/// one-line summary to `out` and diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace etflab::cli
