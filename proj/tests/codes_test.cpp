#include <doctest.h>

#include <algorithm>
#include <random>

#include "kmoment/codes.hpp"
#include "kmoment/errors.hpp"

using namespace kmoment;

namespace {

// Weight distribution of {u in F_2^N : sum u_i t_i = 0} by running over all of F_2^N.
std::vector<Int> brute_weights(const Field& f, const std::vector<Fq>& coordinates) {
  const std::size_t n = coordinates.size();
  REQUIRE(n <= 20);
  std::vector<Int> out(n + 1, Int(0));
  for (std::uint32_t u = 0; u < (1U << n); ++u) {
    Fq sum;
    for (std::size_t i = 0; i < n; ++i) {
      if ((u >> i) & 1U) sum = sum + coordinates[i];
    }
    if (sum.is_zero()) out[std::popcount(u)] += 1;
  }
  return out;
}

struct Case {
  Family family;
  int n;
  int r;
};

}  // namespace

TEST_CASE("C(DC-(1, 4)) against all 2^12 binary words") {
  const Field f(2);
  const CodeInstance code = build_code(f, Family::Minus, 1);
  REQUIRE(code.length() == 12);
  const auto expected = brute_weights(f, code.coordinates);
  for (WeightMethod m : {WeightMethod::Direct, WeightMethod::ClosedForm, WeightMethod::MacWilliams}) {
    const WeightDistribution w = weight_distribution(code, 12, m);
    CHECK(w.complete);
    CHECK(w.counts == expected);
  }
}

TEST_CASE("C(DC-(1, 8)) starts 1, 8, 388") {
  const CodeInstance code = build_code(Field(3), Family::Minus, 1);
  CHECK(weight_distribution(code, 2, WeightMethod::Direct).counts == std::vector<Int>{1, 8, 388});
}

TEST_CASE("results do not depend on the field modulus") {
  const Field standard(3);
  const Field other(3, 0b1101);  // x^3 + x^2 + 1
  const CodeInstance a = build_code(standard, Family::Minus, 1);
  const CodeInstance b = build_code(other, Family::Minus, 1);
  CHECK(weight_distribution(a, 10, WeightMethod::Direct).counts == weight_distribution(b, 10, WeightMethod::Direct).counts);
  CHECK(weight_distribution(b, 10, WeightMethod::MacWilliams).counts ==
        weight_distribution(b, 10, WeightMethod::ClosedForm).counts);
  CHECK(b.dual_dimension == 3);
  for (Fq x : other.elements()) CHECK(dual_weight(b, x, Mode::Enumerated) == dual_weight(b, x, Mode::Predicted));
}

TEST_CASE("weight methods agree") {
  for (Case c : {Case{Family::Minus, 1, 3}, Case{Family::Minus, 1, 4}, Case{Family::Plus, 2, 1},
                 Case{Family::Plus, 2, 2}, Case{Family::Minus, 3, 1}}) {
    const CodeInstance code = build_code(Field(c.r), c.family, c.n);
    const auto direct = weight_distribution(code, 8, WeightMethod::Direct).counts;
    CHECK(weight_distribution(code, 8, WeightMethod::ClosedForm).counts == direct);
    CHECK(weight_distribution(code, 8, WeightMethod::MacWilliams).counts == direct);
    CHECK(direct[0] == 1);
  }
}

TEST_CASE("predicted histograms match the enumerated ones") {
  for (Case c : {Case{Family::Minus, 1, 2}, Case{Family::Minus, 1, 5}, Case{Family::Plus, 2, 2},
                 Case{Family::Minus, 3, 1}}) {
    const Field f(c.r);
    const CodeInstance enumerated = build_code(f, c.family, c.n, {.source = BuildOptions::Source::Enumerated});
    const CodeInstance predicted = build_code(f, c.family, c.n, {.source = BuildOptions::Source::Predicted});
    CHECK(enumerated.source == HistogramSource::Enumerated);
    CHECK(predicted.source == HistogramSource::Predicted);
    CHECK(enumerated.histogram.counts == predicted.histogram.counts);
    CHECK(enumerated.dual_dimension == predicted.dual_dimension);
  }
}

TEST_CASE("dual dimension and injectivity of a -> c(a)") {
  CHECK(build_code(Field(1), Family::Minus, 1).dual_dimension == 0);
  CHECK(build_code(Field(2), Family::Minus, 1).dual_dimension == 1);
  CHECK(build_code(Field(3), Family::Minus, 1).dual_dimension == 3);
  CHECK(build_code(Field(1), Family::Plus, 2).dual_dimension == 0);
  CHECK(build_code(Field(2), Family::Plus, 2).dual_dimension == 2);
  CHECK(build_code(Field(1), Family::Minus, 3).dual_dimension == 1);
  for (Case c : {Case{Family::Minus, 1, 4}, Case{Family::Minus, 1, 2}, Case{Family::Plus, 2, 2}}) {
    const Field f(c.r);
    const CodeInstance code = build_code(f, c.family, c.n);
    CHECK(code.dual_dimension == expected_dual_dimension(c.family, c.n, f));
    std::vector<BitVector> words;
    for (Fq a : f.elements()) words.push_back(dual_codeword(code, a).bits);
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      distinct += std::find(words.begin(), words.begin() + static_cast<long>(i), words[i]) ==
                  words.begin() + static_cast<long>(i);
    }
    CHECK(distinct == (std::size_t{1} << code.dual_dimension));
  }
}

TEST_CASE("dual weights: measured against the Kloosterman formula") {
  for (Case c : {Case{Family::Minus, 1, 3}, Case{Family::Minus, 1, 6}, Case{Family::Plus, 2, 2},
                 Case{Family::Minus, 3, 1}}) {
    const Field f(c.r);
    const CodeInstance code = build_code(f, c.family, c.n);
    for (Fq a : f.elements()) CHECK(dual_weight(code, a, Mode::Enumerated) == dual_weight(code, a, Mode::Predicted));
  }
}

TEST_CASE("Delsarte: the dual is the trace code") {
  for (Case c : {Case{Family::Minus, 1, 2}, Case{Family::Minus, 1, 4}, Case{Family::Plus, 2, 1},
                 Case{Family::Plus, 2, 2}}) {
    const DelsarteReport report = verify_delsarte(build_code(Field(c.r), c.family, c.n));
    CHECK(report.ok());
  }
  CHECK_THROWS_AS(verify_delsarte(build_code(Field(2), Family::Plus, 2), 100), BudgetExceeded);
}

TEST_CASE("weights do not depend on the coordinate order") {
  const Field f(3);
  const CodeInstance code = build_code(f, Family::Minus, 1);
  std::vector<Fq> shuffled = code.coordinates;
  std::mt19937 rng(7);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const CodeInstance permuted = code_from_coordinates(f, Family::Minus, 1, shuffled);
  CHECK(permuted.coordinates != code.coordinates);
  CHECK(weight_distribution(permuted, 6, WeightMethod::Direct).counts ==
        weight_distribution(code, 6, WeightMethod::Direct).counts);
  CHECK(dual_weights(permuted) == dual_weights(code));
  CHECK(verify_delsarte(permuted).ok());
}

TEST_CASE("weight distribution is symmetric when the all-one word is a codeword") {
  for (Case c : {Case{Family::Minus, 1, 2}, Case{Family::Minus, 1, 3}, Case{Family::Minus, 1, 4},
                 Case{Family::Plus, 2, 1}}) {
    const Field f(c.r);
    const CodeInstance code = build_code(f, c.family, c.n);
    Fq sum;
    for (Fq t : code.coordinates) sum = sum + t;
    const auto counts = weight_distribution(code, code.length(), WeightMethod::Direct).counts;
    bool symmetric = true;
    for (std::size_t j = 0; j < counts.size(); ++j) symmetric = symmetric && counts[j] == counts[counts.size() - 1 - j];
    CHECK(symmetric == sum.is_zero());
  }
}

TEST_CASE("dual distribution counts each codeword once") {
  const CodeInstance code = build_code(Field(2), Family::Minus, 1);
  const auto dual = dual_distribution(code);
  Int total = 0;
  for (const Int& c : dual) total += c;
  CHECK(total == 2);
  CHECK(dual[0] == 1);
}

TEST_CASE("bit vectors") {
  BitVector a(130);
  a.set(0);
  a.set(129);
  CHECK(a.weight() == 2);
  BitVector b(130);
  b.set(129);
  a ^= b;
  CHECK(a.weight() == 1);
  CHECK(a.get(0));
  CHECK_FALSE(a.get(129));
}
