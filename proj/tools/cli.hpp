#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cantor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitBudget = 4;
inline constexpr int kExitInvariant = 5;

/// Runs the command line `args` (without the program name). Reports go to
/// `out`; errors go to `err` as {"error": kind, "message": text}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cantor::cli
