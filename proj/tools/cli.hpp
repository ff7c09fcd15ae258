#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grassproj {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitViolation = 1,
    kExitConfig = 2,
    kExitIo = 3,
    kExitFormat = 4,
};

/// Runs `grassproj <args...>` (args exclude the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grassproj
