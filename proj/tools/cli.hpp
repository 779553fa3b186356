#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oplab::cli {

enum ExitCode : int { kSuccess = 0, kInternalError = 1, kValidationError = 2, kNumericFailure = 3 };

// Runs one command line (without the program name).  Summaries go to `out`,
// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oplab::cli
