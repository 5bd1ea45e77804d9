#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toricq {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_positive = 0, exit_negative = 1, exit_input_error = 2, exit_internal_error = 3 };

/// Runs one command; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toricq
