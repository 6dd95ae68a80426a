#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cohdyn::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitIo = 2,
  kExitNumerical = 3,  // |h| > 1 or solver failure
};

/// Runs one command line (args[0] is the program name). Normal output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohdyn::cli
