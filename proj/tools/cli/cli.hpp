#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace idpart::cli {

// Process exit codes. Stable contract for scripts.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kResourceCap = 3,
  kDomainError = 4,
  kIoError = 5,
};

// Runs the command line (args excludes the program name). Reports go to out
// unless --output names a file; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace idpart::cli
