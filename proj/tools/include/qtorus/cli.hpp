#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qtorus::cli {

enum ExitCode : int {
  kPass = 0,
  kMathFailure = 1,
  kUsage = 2,
  kNonConvergence = 3,
};

// Runs the command line `args` (without the program name), writing to out and err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtorus::cli
