#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kmoment::cli {

// Exit codes of `run`.
inline constexpr int kAllChecksPass = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kBudgetExceeded = 3;

// Parses argv (argv[0] is the program name), writes the report to `out`
// (or to --out) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kmoment::cli
