#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "branchcov/error.hpp"

namespace branchcov::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kBadInput = 1,   // malformed file, shape mismatch, bad flags
  kNegative = 2,   // not admissible, not decomposable, verification failed
  kInternal = 3,   // an internal consistency check failed
};

/// Exit code for a library error that escapes a subcommand.
int exit_code_for(const Error& e);

/// Runs one invocation; `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace branchcov::cli
