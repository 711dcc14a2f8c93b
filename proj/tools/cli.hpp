#pragma once

#include <string>
#include <vector>

namespace conewave::cli {

/// Runs one CLI invocation in-process: args exactly as on the command line,
/// without the program name. Returns the process exit code:
///   0 success / all checks pass
///   1 verification check failure (report still written)
///   2 invalid arguments
///   3 I/O failure
///   4 input validation failure
/// Exposed as a library entry point so reproducibility tests can drive the
/// tool without spawning processes.
int run_cli(const std::vector<std::string>& args);

}  // namespace conewave::cli
