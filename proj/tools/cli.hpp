#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qce::cli {

enum ExitCode : int {
  kSuccess = 0,
  kGeneric = 1,
  kInput = 2,
  kExpansion = 3,
  kSolve = 4,
  kResource = 5,
};

/// Runs one qce command. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qce::cli
