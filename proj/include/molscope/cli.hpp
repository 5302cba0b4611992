#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace molscope {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,
  kExitIo = 2,
  kExitLimit = 3,
  kExitParams = 4,
  kExitViolation = 5,
};

/// Runs one command; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace molscope
