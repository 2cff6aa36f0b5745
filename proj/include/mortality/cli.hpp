#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mortality {

// Exit codes of the command-line front end.
inline constexpr int kExitAffirmative = 0;
inline constexpr int kExitNegative    = 1;
inline constexpr int kExitUsage       = 2;

// Runs one command line (args[0] is the program name) with the given output
// streams and returns the process exit code.
int run_cli(std::vector<std::string> const& args, std::ostream& out,
            std::ostream& err);

}  // namespace mortality
