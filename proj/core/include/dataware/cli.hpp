#pragma once

#include <string>
#include <vector>

namespace dataware {

/// Parses and runs a command line (excluding argv[0]).
/// Subcommands: derive, generate, validate, report.
/// Returns an exit code: 0 success, 1 partial/validation failure, 2 input error.
int run_cli(const std::vector<std::string>& args);

}  // namespace dataware
