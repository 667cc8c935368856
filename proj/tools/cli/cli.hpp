#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace moodloom::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitFetch = 3,
};

/// Runs one `moodloom` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moodloom::cli
