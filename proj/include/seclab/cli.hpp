#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seclab {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitBreakdown = 2 };

/// Runs one command line (without the program name). The artifact goes to
/// --out when given, otherwise to `out`; diagnostics go to `err`. Nothing is
/// written to --out unless the command produced its artifact.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seclab
