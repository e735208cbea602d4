#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oco::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kNumerical = 4,
};

/// Parses `args` (without the program name), runs the subcommand and returns
/// the process exit code. Diagnostics go to `err` as a single line.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oco::cli
