#pragma once

#include <iosfwd>

namespace dispersive {

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_no_convergence = 2, exit_io = 3 };

/// Entry point of the command-line tool; argv[0] is the program name.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dispersive
