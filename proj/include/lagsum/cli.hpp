#ifndef LAGSUM_CLI_HPP
#define LAGSUM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace lagsum {

enum ExitCode : int { exit_ok = 0, exit_input_error = 1, exit_failed = 2 };

/// Runs the command line (without the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lagsum

#endif
