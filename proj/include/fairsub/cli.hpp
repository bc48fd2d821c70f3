#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairsub::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kSuccess = 0, kInternalError = 1, kUserError = 2 };

/// Runs the tool with `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairsub::cli
