#pragma once

#include <string>
#include <vector>

#include "kmoment/errors.hpp"
#include "kmoment/exact.hpp"

namespace kmoment {

// One exact comparison; pass is equality of the serialized values.
struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

Check make_check(std::string name, const Int& expected, const Int& actual);
Check make_check(std::string name, const std::vector<Int>& expected, const std::vector<Int>& actual);
Check make_check(std::string name, const std::string& expected, const std::string& actual);

struct Criterion {
  int id = 0;
  std::string key;
  std::string title;
  double limit_seconds = 0;
};

struct CriterionResult {
  Criterion criterion;
  std::vector<Check> checks;
  double seconds = 0;
  std::string error;  // set when the run threw

  bool within_time() const { return seconds < criterion.limit_seconds; }
  bool pass() const;
};

// The acceptance criteria in order.
const std::vector<Criterion>& criteria();

// Resolves "all", a number, or a key to criterion ids.
std::vector<int> select_criteria(const std::string& suite);

CriterionResult run_criterion(int id, const Budget& budget = {});

}  // namespace kmoment
