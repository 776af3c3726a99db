#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wsts::cli {

/// Exit codes shared by every command.
inline constexpr int kPositive = 0;  // holds, included, true
inline constexpr int kNegative = 1;  // violated, not included, false
inline constexpr int kInputError = 2;
inline constexpr int kLimitReached = 3;

/// Runs one command line (without the program name). Reads WSTS_VERIFY_BUDGET for the
/// default node budget. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wsts::cli
