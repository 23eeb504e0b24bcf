#include <doctest.h>

#include "kmoment/char_sums.hpp"
#include "kmoment/codes.hpp"
#include "kmoment/errors.hpp"
#include "kmoment/moments.hpp"

using namespace kmoment;

TEST_CASE("Stirling numbers of the second kind") {
  CHECK(stirling2(3, 2) == 3);
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(5, 0) == 0);
  CHECK(stirling2(2, 5) == 0);
  std::vector<std::vector<Int>> table(21, std::vector<Int>(21, Int(0)));
  table[0][0] = 1;
  for (int h = 1; h <= 20; ++h) {
    for (int t = 1; t <= h; ++t) table[h][t] = t * table[h - 1][t] + table[h - 1][t - 1];
  }
  for (int h = 0; h <= 20; ++h) {
    for (int t = 0; t <= 20; ++t) REQUIRE(stirling2(h, t) == table[h][t]);
  }
}

TEST_CASE("first recursive moments for q = 8") {
  const CodeInstance code = build_code(Field(3), Family::Minus, 1);
  const RecursionInput input = make_recursion_input(code, 2);
  const MomentTable table = recursive_moments(input, MomentKind::MkMinus);
  CHECK(table.values == std::vector<Int>{7, 1, 55});
}

TEST_CASE("recursions against brute-force moments") {
  struct Case {
    Family family;
    int n;
    int r;
    int h_max;
  };
  for (Case c : {Case{Family::Minus, 1, 3, 8}, Case{Family::Minus, 1, 4, 6}, Case{Family::Minus, 3, 1, 6},
                 Case{Family::Minus, 3, 2, 4}, Case{Family::Plus, 2, 2, 6}, Case{Family::Plus, 2, 3, 4}}) {
    const Field f(c.r);
    const CodeInstance code = build_code(f, c.family, c.n, {.source = BuildOptions::Source::Predicted});
    const RecursionInput input = make_recursion_input(code, c.h_max);
    if (c.family == Family::Minus) {
      CHECK(recursive_moments(input, MomentKind::MkMinus).values == brute_moments(f, 1, c.h_max).values);
    } else {
      CHECK(recursive_moments(input, MomentKind::Mk2Plus).values == brute_moments(f, 2, c.h_max).values);
      const auto all = brute_moments(f, 1, 2 * c.h_max).values;
      const auto even = recursive_moments(input, MomentKind::MkEvenPlus).values;
      for (int h = 0; h <= c.h_max; ++h) CHECK(even[h] == all[2 * h]);
    }
  }
}

TEST_CASE("degenerate recursions are refused") {
  const CodeInstance small = build_code(Field(2), Family::Minus, 1);
  const RecursionInput input = make_recursion_input(small, 3);
  CHECK_FALSE(recursion_admissible(Family::Minus, 1, 4, MomentKind::MkMinus));
  CHECK(recursion_admissible(Family::Minus, 1, 8, MomentKind::MkMinus));
  CHECK(recursion_admissible(Family::Minus, 3, 2, MomentKind::MkMinus));
  CHECK_FALSE(recursion_admissible(Family::Plus, 2, 2, MomentKind::Mk2Plus));
  CHECK_THROWS_AS(recursive_moments(input, MomentKind::MkMinus), InvalidArgument);
  CHECK_THROWS_AS(recursive_moments(input, MomentKind::Mk2Plus, true), InvalidArgument);
}

TEST_CASE("forced recursions still match when the dual dimension drops") {
  // a -> c(a) is 2-to-1 here, but the multiplicity and the Pless factor 2^dim cancel to q.
  const CodeInstance minus = build_code(Field(2), Family::Minus, 1);
  CHECK(recursive_moments(make_recursion_input(minus, 6), MomentKind::MkMinus, true).values ==
        brute_moments(Field(2), 1, 6).values);
  const CodeInstance plus = build_code(Field(1), Family::Plus, 2);
  CHECK(recursive_moments(make_recursion_input(plus, 4), MomentKind::Mk2Plus, true).values ==
        brute_moments(Field(1), 2, 4).values);
}

TEST_CASE("Pless power moments") {
  for (auto [family, n, r] : {std::tuple{Family::Minus, 1, 2}, std::tuple{Family::Minus, 1, 3},
                              std::tuple{Family::Minus, 1, 4}, std::tuple{Family::Plus, 2, 1}}) {
    const CodeInstance code = build_code(Field(r), family, n);
    const auto full = weight_distribution(code, code.length(), WeightMethod::Direct);
    const auto dual = dual_distribution(code);
    const int k = static_cast<int>(code.length()) - code.dual_dimension;
    for (int h = 0; h <= 6; ++h) {
      const PlessSides sides = pless_sides(full, dual, k, h);
      CHECK(sides.holds());
      CHECK(pless_check(full, dual, k, h));
    }
  }
  const CodeInstance code = build_code(Field(3), Family::Minus, 1);
  CHECK_THROWS_AS(pless_sides(weight_distribution(code, 3, WeightMethod::Direct), dual_distribution(code), 53, 1),
                  InvalidArgument);
}

TEST_CASE("moment expansions of the dual weights") {
  for (auto [family, n, r] : {std::tuple{Family::Minus, 1, 3}, std::tuple{Family::Minus, 3, 1},
                              std::tuple{Family::Plus, 2, 2}}) {
    const CodeInstance code = build_code(Field(r), family, n);
    for (int h = 0; h <= 5; ++h) CHECK(moment_expansion_check(code, h).holds());
  }
}
