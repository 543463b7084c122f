#pragma once

#include <ostream>

namespace herd {

/// Exit status of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  /// The result contradicts `--expect`.
  kExitUnexpected = 2,
};

/// Runs one `herd` invocation. Documents go to `out` (or the --output
/// path), diagnostics to `err`; errors print as "<category>: <message>".
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace herd
