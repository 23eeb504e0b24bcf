// Runs every acceptance criterion and prints one line per criterion.
// Exit status is nonzero if any criterion fails or runs over its time limit.

#include <cstdio>
#include <string>

#include "kmoment/verification.hpp"

int main(int argc, char** argv) {
  const std::string suite = argc > 1 ? argv[1] : "all";
  int failures = 0;
  for (int id : kmoment::select_criteria(suite)) {
    kmoment::CriterionResult result;
    try {
      result = kmoment::run_criterion(id);
    } catch (const std::exception& e) {
      result.criterion = kmoment::criteria().at(id - 1);
      result.error = e.what();
    }
    std::size_t passed = 0;
    for (const auto& check : result.checks) passed += check.pass;
    const bool ok = result.pass();
    failures += !ok;
    std::printf("%s  %2d %-22s %zu/%zu checks  %.2f s (limit %.0f s)\n", ok ? "PASS" : "FAIL", id,
                result.criterion.key.c_str(), passed, result.checks.size(), result.seconds,
                result.criterion.limit_seconds);
    if (!ok) {
      if (!result.error.empty()) std::printf("      error: %s\n", result.error.c_str());
      for (const auto& check : result.checks) {
        if (!check.pass) {
          std::printf("      %s: expected %s, got %s\n", check.name.c_str(), check.expected.c_str(),
                      check.actual.c_str());
        }
      }
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
