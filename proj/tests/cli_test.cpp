#include <doctest.h>
#include <json.hpp>

#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "kmoment");
  std::ostringstream out;
  std::ostringstream err;
  const int code = kmoment::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("group report for Sp(4, 2)") {
  const Result r = run({"group", "--n", "2", "--r", "1", "--report", "--no-elapsed"});
  REQUIRE(r.code == kmoment::cli::kAllChecksPass);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "group");
  CHECK(doc["results"]["sizes"]["symplectic_order"] == "720");
  CHECK(doc["results"]["enumerated_symplectic_order"] == "720");
  CHECK_FALSE(doc.contains("elapsed_seconds"));
}

TEST_CASE("code weights for DC-(1, 8)") {
  const Result r = run({"code", "--family", "minus", "--n", "1", "--r", "3", "--weights", "--j-max", "2"});
  REQUIRE(r.code == kmoment::cli::kAllChecksPass);
  const auto doc = nlohmann::json::parse(r.out);
  const std::vector<std::string> expected = {"1", "8", "388"};
  CHECK(doc["results"]["weight_distribution"]["direct"] == expected);
  CHECK(doc["results"]["weight_distribution"]["macwilliams"] == expected);
  CHECK(doc.contains("elapsed_seconds"));
}

TEST_CASE("csv output") {
  const Result r = run({"hist", "--r", "3", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("value,count\n-5,1\n-1,3\n3,3\n", 0) == 0);
}

TEST_CASE("moments with both oracles") {
  const Result r = run({"moments", "--family", "minus", "--n", "1", "--r", "3", "--h-max", "3", "--no-elapsed"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const std::vector<std::string> expected = {"7", "1", "55", "-47"};
  CHECK(doc["results"]["moments"]["mk_minus"]["recursion"] == expected);
  CHECK(doc["results"]["moments"]["mk_minus"]["brute"] == expected);
}

TEST_CASE("output is deterministic apart from the timing") {
  const std::vector<std::string> args = {"code", "--family", "plus", "--n", "2", "--r", "2", "--weights", "--no-elapsed"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kmoment::cli::kUsageError);
  CHECK(run({"ksum", "--r", "13"}).code == kmoment::cli::kUsageError);
  CHECK(run({"code", "--family", "minus", "--n", "2", "--r", "2"}).code == kmoment::cli::kUsageError);
  CHECK(run({"ksum", "--r", "3", "--a", "9"}).code == kmoment::cli::kUsageError);
  CHECK(run({"moments", "--family", "minus", "--n", "1", "--r", "2", "--oracle", "recursion"}).code ==
        kmoment::cli::kUsageError);
  CHECK(run({"group", "--n", "3", "--r", "1", "--budget", "1000"}).code == kmoment::cli::kBudgetExceeded);
  CHECK(run({"verify", "--suite", "nonexistent"}).code == kmoment::cli::kUsageError);
}

TEST_CASE("single acceptance criterion through the CLI") {
  const Result r = run({"verify", "--suite", "carlitz", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1,carlitz,true") != std::string::npos);
}
