#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace takagi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Runs one command line (without the program name), writing results to out
/// and diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace takagi::cli
