#ifndef FLEXKIT_CLI_HPP
#define FLEXKIT_CLI_HPP

#include <ostream>

namespace flexkit {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,       // parse error, bad option, not a quartic
  kExitSingular = 2,    // NotSmooth or a singular point
  kExitNumerical = 3,   // weight sum mismatch and other numerical failures
  kExitMismatch = 4,    // result contradicts a table row or a stated identity
};

/// Runs the tool with the given arguments, writing reports to `out` and
/// diagnostics to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flexkit

#endif  // FLEXKIT_CLI_HPP
