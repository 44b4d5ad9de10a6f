#pragma once
// Subcommand dispatch for the `freeball` executable.

#include <ostream>
#include <string>
#include <vector>

#include "freeball/error.hpp"

namespace freeball::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitPrecondition = 1,  ///< precondition, domain, dimension or parameter violations
  kExitNumerical = 2,     ///< numerical failure (non-PD Perron vector, singular similarity, ...)
  kExitParse = 3,         ///< unreadable input or malformed JSON / map text / flags
};

int exit_code_for(ErrorKind kind) noexcept;

/// Runs one command. `args` excludes the program name. Documents go to
/// `out` (or the --out file); diagnostics go to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freeball::cli
