#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fqdyn::frontend {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFalsified = 3;

/// Runs one command; args excludes the program name.  Reports go to out,
/// diagnostics to err.  Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits a batch line into words: whitespace separated, with '...' and
/// "..." quoting and backslash escapes.  Throws std::invalid_argument on an
/// unterminated quote.
std::vector<std::string> split_command_line(const std::string& line);

}  // namespace fqdyn::frontend
