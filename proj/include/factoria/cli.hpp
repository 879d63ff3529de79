#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace factoria {

// Exit codes of the command-line tool.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

// Runs `factoria <args...>` (program name excluded).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace factoria
