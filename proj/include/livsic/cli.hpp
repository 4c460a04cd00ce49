#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace livsic::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Runs one command (args excludes the program name) and returns the exit
/// code: 0 success, 1 property fails (payload carries a witness), 2 invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace livsic::cli
