#include <doctest.h>

#include <set>
#include <unordered_set>

#include "kmoment/char_sums.hpp"
#include "kmoment/errors.hpp"
#include "kmoment/symplectic.hpp"

using namespace kmoment;

namespace {

// All products p1 sigma_r p2, deduplicated.
std::set<std::uint64_t> naive_double_coset(const Field& f, int n, int r) {
  const auto parabolic = enumerate_parabolic(f, n);
  const Matrix sigma = make_sigma(n, r);
  std::set<std::uint64_t> out;
  for (const Matrix& p1 : parabolic) {
    const Matrix left = multiply(f, p1, sigma);
    for (const Matrix& p2 : parabolic) out.insert(packed_key(f, multiply(f, left, p2)));
  }
  return out;
}

}  // namespace

TEST_CASE("matrix helpers") {
  const Field f(2);
  Matrix m(2);
  m(0, 0) = Fq(2);
  m(0, 1) = Fq(1);
  m(1, 1) = Fq(3);
  CHECK(multiply(f, m, inverse(f, m)) == Matrix::identity(2));
  CHECK(rank(f, m) == 2);
  CHECK(matrix_trace(m) == Fq(1));
  CHECK(transpose(transpose(m)) == m);
  Matrix singular(2);
  singular(0, 0) = Fq(1);
  CHECK(rank(f, singular) == 1);
  CHECK_THROWS_AS(inverse(f, singular), InvalidArgument);
  CHECK_THROWS_AS(packed_key(Field(12), Matrix(6)), Unsupported);
}

TEST_CASE("sigma_r and J are symplectic, diag(g, 1) is not") {
  const Field f(2);
  for (int n = 1; n <= 3; ++n) {
    CHECK(is_symplectic(f, make_j(n)));
    for (int r = 0; r <= n; ++r) CHECK(is_symplectic(f, make_sigma(n, r)));
  }
  Matrix d(2);
  d(0, 0) = Fq(2);
  d(1, 1) = Fq(1);
  CHECK_FALSE(is_symplectic(f, d));
  CHECK_THROWS_AS(make_sigma(2, 3), InvalidArgument);
}

TEST_CASE("group orders") {
  CHECK(enumerate_gl(Field(1), 3).size() == 168);
  CHECK(gl_order(2, 4) == 180);
  CHECK(q_binomial(3, 1, 2) == 7);
  CHECK(q_binomial(4, 2, 2) == 35);
  CHECK(enumerate_symmetric(Field(2), 2).size() == 64);
  CHECK(enumerate_parabolic(Field(1), 2).size() == 48);
  CHECK(enumerate_parabolic(Field(2), 2).size() == 11520);
  CHECK(symplectic_order(2, 2) == 720);
  CHECK(symplectic_order(2, 4) == 979200);
  CHECK(symplectic_order(3, 2) == 1451520);
  CHECK(brute_symplectic_order(Field(1), 2) == 720);
  CHECK(brute_symplectic_order(Field(2), 1) == 60);
}

TEST_CASE("parabolic elements are symplectic") {
  const Field f(2);
  for (const Matrix& p : enumerate_parabolic(Field(1), 2)) {
    CHECK(is_symplectic(Field(1), p));
    CHECK(in_parabolic(p));
  }
  std::size_t count = 0;
  for (const Matrix& p : enumerate_parabolic(f, 2)) count += is_symplectic(f, p);
  CHECK(count == 11520);
}

TEST_CASE("stabilizers and transversals") {
  CHECK(transversal(Field(2), 2, 1).size() == 20);
  CHECK(transversal(Field(1), 3, 2).size() == 56);
  for (int r = 1; r <= 2; ++r) {
    for (int n = 1; n <= 2; ++n) {
      const Field f(r);
      const SizeReport sizes = predicted_sizes(n, f.q());
      for (int k = 0; k <= n; ++k) {
        CHECK(stabilizer_subgroup(f, n, k).size() == sizes.stabilizer_orders[k].get_ui());
        CHECK(transversal(f, n, k).size() == sizes.transversal_sizes[k].get_ui());
      }
    }
  }
}

TEST_CASE("double cosets against all products p1 sigma p2") {
  for (auto [r, n] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}}) {
    const Field f(r);
    const SizeReport sizes = predicted_sizes(n, f.q());
    for (int k = 0; k <= n; ++k) {
      const auto naive = naive_double_coset(f, n, k);
      std::set<std::uint64_t> enumerated;
      for_each_double_coset_element(f, n, k, [&](const Matrix& w) {
        CHECK(is_symplectic(f, w));
        enumerated.insert(packed_key(f, w));
      });
      CHECK(enumerated == naive);
      CHECK(Int(static_cast<unsigned long>(naive.size())) == sizes.double_coset_sizes[k]);
    }
  }
}

TEST_CASE("Bruhat decomposition covers Sp(4, 2)") {
  const Field f(1);
  std::unordered_set<std::uint64_t> all;
  for (int k = 0; k <= 2; ++k) {
    for_each_double_coset_element(f, 2, k, [&](const Matrix& w) { CHECK(all.insert(packed_key(f, w)).second); });
  }
  CHECK(all.size() == 720);
}

TEST_CASE("size formulas") {
  for (long q : {2L, 4L, 8L, 16L}) {
    for (int n = 1; n <= 5; ++n) {
      const SizeReport s = predicted_sizes(n, q);
      CHECK(s.partition_holds);
      CHECK(s.q_binomial_theorem_holds);
      CHECK(s.stabilizer_index_holds);
      if (n % 2 == 1) {
        CHECK(*s.dc_minus == s.double_coset_sizes[n - 1]);
        const FamilyConstants k = family_constants(Family::Minus, n, q);
        CHECK(*s.dc_minus == k.length);
      } else {
        CHECK(*s.dc_plus == s.double_coset_sizes[n - 2]);
        CHECK(*s.dc_plus == family_constants(Family::Plus, n, q).length);
      }
    }
  }
  CHECK(predicted_sizes(3, 2).dc_minus == Int(602112));
}

TEST_CASE("family constants") {
  const FamilyConstants m1 = family_constants(Family::Minus, 1, 8);
  CHECK(m1.a == 8);
  CHECK(m1.b == 7);
  const FamilyConstants p2 = family_constants(Family::Plus, 2, 2);
  CHECK(p2.a == 16);
  CHECK(p2.b == 3);
  CHECK(family_constants(Family::Minus, 3, 2).a == 14336);
  CHECK(family_constants(Family::Minus, 3, 2).b == 42);
  CHECK_THROWS_AS(family_constants(Family::Minus, 2, 2), InvalidArgument);
  CHECK_THROWS_AS(parse_family("neither"), InvalidArgument);
}

TEST_CASE("alternating matrix counts") {
  CHECK(count_alternating(Field(1), 2) == 1);
  CHECK(count_alternating(Field(2), 2) == 3);
  CHECK(count_alternating(Field(1), 4) == 28);
  CHECK(count_alternating(Field(1), 3) == 0);
  for (int r = 1; r <= 2; ++r) {
    const Field f(r);
    for (int size = 1; size <= 4; ++size) {
      CHECK(count_alternating(f, size) == alternating_count_formula(size, f.q()));
    }
  }
  // Without the -1 factors the count for q = 2, size 4 would be 4 * 2 * 8.
  CHECK(alternating_count_formula(4, 2, true) == 64);
}

TEST_CASE("trace histograms: enumeration against the closed forms") {
  for (auto [r, n] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{3, 1}, std::pair{4, 1}, std::pair{1, 2},
                      std::pair{2, 2}, std::pair{1, 3}}) {
    const Field f(r);
    const int k = n % 2 == 1 ? n - 1 : n - 2;
    const FqHistogram enumerated = trace_histogram(f, n, k, Mode::Enumerated);
    CHECK(enumerated.counts == predicted_trace_histogram(f, n, k).counts);
  }
}

TEST_CASE("double coset character sums") {
  for (auto [r, n] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{3, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    const Field f(r);
    for (int k = 0; k <= n; ++k) {
      const FqHistogram hist = trace_histogram(f, n, k, Mode::Enumerated);
      for (Fq a : f.units()) {
        CHECK(character_sum_from_histogram(f, hist, a) == predicted_dc_character_sum(f, n, k, a));
        if (k % 2 == 1) CHECK(predicted_dc_character_sum(f, n, k, a) == 0);
      }
    }
  }
}

TEST_CASE("trace counts are recovered from character sums") {
  const Field f(2);
  const FqHistogram hist = trace_histogram(f, 2, 1, Mode::Enumerated);
  const Int size = hist.total();
  for (Fq beta : f.elements()) {
    Int sum = size;
    for (Fq a : f.units()) sum += f.lambda(f.mul(a, beta)) * character_sum_from_histogram(f, hist, a);
    CHECK(sum % f.q() == 0);
    CHECK(sum / f.q() == hist.at(beta));
  }
}

TEST_CASE("enumeration respects its budget") {
  Budget tiny;
  tiny.stored_matrices = 1000;
  CHECK_THROWS_AS(enumerate_double_coset(Field(1), 3, 2, tiny), BudgetExceeded);
}
