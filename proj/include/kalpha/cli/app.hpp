#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kalpha::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitData = 3,
  kExitDegenerate = 4,
};

// Runs the command line (args excludes the program name). Reports go to out;
// diagnostics and progress go to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kalpha::cli
