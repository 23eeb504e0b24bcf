#include <doctest.h>

#include <algorithm>
#include <map>

#include "kmoment/char_sums.hpp"
#include "kmoment/errors.hpp"
#include "kmoment/symplectic.hpp"

using namespace kmoment;

namespace {

long naive_kloosterman(const Field& f, Fq a, Fq c) {
  long sum = 0;
  for (Fq x : f.units()) sum += f.lambda(f.mul(c, x + f.div(a, x)));
  return sum;
}

long naive_kloosterman2(const Field& f, Fq a) {
  long sum = 0;
  for (Fq x : f.units()) {
    for (Fq y : f.units()) sum += f.lambda(x + y + f.div(a, f.mul(x, y)));
  }
  return sum;
}

// Sum over GL(t, q) of lambda(c tr(w + a w^{-1})).
Int naive_gl_kloosterman(const Field& f, int t, Fq a, Fq c) {
  long sum = 0;
  for (const Matrix& w : enumerate_gl(f, t)) {
    const Matrix inv = inverse(f, w);
    Fq tr = matrix_trace(w);
    for (int i = 0; i < t; ++i) tr = tr + f.mul(a, inv(i, i));
    sum += f.lambda(f.mul(c, tr));
  }
  return sum;
}

}  // namespace

TEST_CASE("Kloosterman sums agree with the naive sum") {
  for (int r = 1; r <= 6; ++r) {
    const Field f(r);
    for (Fq c : f.units()) {
      for (Fq a : f.units()) REQUIRE(kloosterman(f, a, c) == naive_kloosterman(f, a, c));
    }
    for (Fq a : f.units()) CHECK(kloosterman_m(f, 2, a, f.one()) == naive_kloosterman2(f, a));
  }
}

TEST_CASE("value histograms for q = 4 and q = 8") {
  CHECK(value_histogram(Field(2)).counts == std::map<std::int64_t, std::uint64_t>{{-1, 2}, {3, 1}});
  CHECK(value_histogram(Field(3)).counts == std::map<std::int64_t, std::uint64_t>{{-5, 1}, {-1, 3}, {3, 3}});
  CHECK_THROWS_AS(value_histogram(Field(1)), InvalidArgument);
}

TEST_CASE("value histogram under another modulus") {
  const Field other(3, 0b1101);
  CHECK(value_histogram(other).counts == value_histogram(Field(3)).counts);
  const Field other6(6, 0b1011011);  // x^6 + x^4 + x^3 + x + 1
  REQUIRE(is_irreducible(0b1011011));
  CHECK(value_histogram(other6).counts == value_histogram(Field(6)).counts);
  for (Fq a : other6.units()) {
    const Int k = kloosterman(other6, a);
    CHECK(kloosterman_m(other6, 2, a, other6.one()) == k * k - 64);
  }
}

TEST_CASE("power moments") {
  const Field f(3);
  CHECK(moment(f, 1, 0) == 7);
  CHECK(moment(f, 1, 1) == 1);
  CHECK(moment(f, 1, 2) == 55);
  const MomentTable table = brute_moments(f, 1, 6);
  for (int h = 0; h <= 6; ++h) {
    Int from_histogram = 0;
    for (const auto& [value, count] : value_histogram(f).counts) {
      from_histogram += Int(static_cast<unsigned long>(count)) * ipow(Int(static_cast<long>(value)), h);
    }
    CHECK(table.values[h] == from_histogram);
  }
}

TEST_CASE("Carlitz identity K_2 = K^2 - q") {
  for (int r = 1; r <= 6; ++r) {
    const Field f(r);
    for (Fq a : f.units()) {
      const Int k = kloosterman(f, a);
      REQUIRE(kloosterman_m(f, 2, a, f.one()) == k * k - f.q());
    }
  }
}

TEST_CASE("Weil bound and residue of K mod 4") {
  for (int r = 2; r <= 8; ++r) {
    const Field f(r);
    for (Fq a : f.units()) {
      const Int k = kloosterman(f, a);
      REQUIRE(k * k < 4 * static_cast<long>(f.q()));
      REQUIRE(((k % 4) + 4) % 4 == 3);
    }
  }
}

TEST_CASE("Frobenius moves both the argument and the twist") {
  const Field f(2);
  const Fq g(2);
  // The twisted character is not invariant under a -> a^2 on its own.
  CHECK(kloosterman(f, g, g) == 3);
  CHECK(kloosterman(f, f.square(g), g) == -1);
  for (int r = 1; r <= 5; ++r) {
    const Field field(r);
    for (Fq c : field.units()) {
      for (Fq a : field.units()) {
        REQUIRE(kloosterman(field, field.square(a), field.square(c)) == kloosterman(field, a, c));
        REQUIRE(kloosterman(field, field.square(a)) == kloosterman(field, a));
      }
    }
  }
}

TEST_CASE("GL Kloosterman sums against enumeration of GL(t, q)") {
  for (int r = 1; r <= 3; ++r) {
    const Field f(r);
    for (Fq a : f.units()) {
      for (Fq c : f.units()) {
        CHECK(gl_kloosterman(f, 1, a, GlMethod::Recursive, c) == kloosterman(f, a, c));
        CHECK(gl_kloosterman(f, 2, a, GlMethod::Recursive, c) == naive_gl_kloosterman(f, 2, a, c));
      }
    }
  }
  const Field f2(1);
  CHECK(gl_kloosterman(f2, 3, f2.one(), GlMethod::Recursive) == naive_gl_kloosterman(f2, 3, f2.one(), f2.one()));
}

TEST_CASE("GL Kloosterman closed form equals the recursion") {
  for (int r = 1; r <= 4; ++r) {
    const Field f(r);
    for (int t = 0; t <= 6; ++t) {
      for (Fq a : f.units()) {
        REQUIRE(gl_kloosterman(f, t, a, GlMethod::Closed) == gl_kloosterman(f, t, a, GlMethod::Recursive));
      }
    }
  }
  CHECK(gl_kloosterman(Field(2), 0, Fq(1), GlMethod::Closed) == 1);
}

TEST_CASE("twisted sum identity") {
  for (int r = 1; r <= 5; ++r) {
    const Field f(r);
    for (int m = 1; m <= 2; ++m) {
      for (Fq beta : f.elements()) {
        const IdentityValue v = twisted_sum(f, m, beta);
        long direct = 0;
        for (Fq a : f.units()) direct += f.lambda(f.mul(a, beta)) * kloosterman_m(f, m, a, f.one()).get_si();
        CHECK(v.measured == direct);
        CHECK(v.holds());
      }
    }
  }
}

TEST_CASE("Artin-Schreier character sums") {
  for (int r = 1; r <= 6; ++r) {
    const Field f(r);
    const auto image = f.artin_schreier_image();
    for (Fq beta : f.units()) {
      CHECK(artin_schreier_char_sum(f, beta, ArtinSchreierVariant::A).holds());
      for (Fq b : f.elements()) {
        if (std::binary_search(image.begin(), image.end(), b)) {
          CHECK_THROWS_AS(artin_schreier_char_sum(f, beta, ArtinSchreierVariant::B, b), InvalidArgument);
        } else {
          CHECK(artin_schreier_char_sum(f, beta, ArtinSchreierVariant::B, b).holds());
        }
      }
    }
  }
}

TEST_CASE("argument validation") {
  const Field f(3);
  CHECK_THROWS_AS(kloosterman(f, Fq(0)), InvalidArgument);
  CHECK_THROWS_AS(kloosterman(f, Fq(1), Fq(0)), InvalidArgument);
  CHECK_THROWS_AS(kloosterman_m(f, 0, Fq(1), Fq(1)), InvalidArgument);
  CHECK_THROWS_AS(gl_kloosterman(f, 7, Fq(1), GlMethod::Recursive), InvalidArgument);
  Budget tiny;
  tiny.iterations = 100;
  CHECK_THROWS_AS(brute_moments(Field(4), 3, 4, tiny), BudgetExceeded);
}
