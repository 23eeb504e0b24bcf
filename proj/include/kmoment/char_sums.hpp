#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "kmoment/errors.hpp"
#include "kmoment/exact.hpp"
#include "kmoment/field.hpp"

namespace kmoment {

// Multiplicities of the integer values taken by a character sum.
struct IntHistogram {
  std::map<std::int64_t, std::uint64_t> counts;

  std::uint64_t total() const;
};

// Moments MK_m^h for h = 0..h_max of one field and dimension.
struct MomentTable {
  enum class Source { Brute, Recursion };

  int m = 1;
  int h_max = 0;
  // values[h] is the moment of order exponent_step * h.
  int exponent_step = 1;
  std::vector<Int> values;
  Source source = Source::Brute;
};

// A character-sum identity evaluated both ways.
struct IdentityValue {
  Int measured;
  Int predicted;

  bool holds() const { return measured == predicted; }
};

// m-dimensional Kloosterman sum K_m(psi; a) with psi(x) = lambda(c x),
// by direct summation over (F_q^*)^m.
Int kloosterman_m(const Field& field, int m, Fq a, Fq c, const Budget& budget = {});

// K(lambda_c; a) for m = 1.
Int kloosterman(const Field& field, Fq a, Fq c);
inline Int kloosterman(const Field& field, Fq a) { return kloosterman(field, a, field.one()); }

// K_m(lambda_c; a) for every a; entry 0 is unused and left at zero.
std::vector<Int> kloosterman_table(const Field& field, int m, Fq c, const Budget& budget = {});

// MK_m^h = sum over a != 0 of K_m(lambda; a)^h, brute force.
Int moment(const Field& field, int m, int h, const Budget& budget = {});
MomentTable brute_moments(const Field& field, int m, int h_max, const Budget& budget = {});

// Values of K(lambda; a) over a in F_q^*. Needs r >= 2.
IntHistogram value_histogram(const Field& field);

enum class GlMethod { Recursive, Closed };

// Kloosterman sum for GL(t, q) with psi(x) = lambda(c x), 0 <= t <= 6.
Int gl_kloosterman(const Field& field, int t, Fq a, GlMethod method, Fq c);
inline Int gl_kloosterman(const Field& field, int t, Fq a, GlMethod method) {
  return gl_kloosterman(field, t, a, method, field.one());
}

// sum over a != 0 of lambda(a beta) K_m(lambda; a), with the value predicted
// from K_{m-1}(lambda; beta^{-1}).
IdentityValue twisted_sum(const Field& field, int m, Fq beta, const Budget& budget = {});

enum class ArtinSchreierVariant { A, B };

// Variant A: sum over alpha not in {0, 1} of lambda(beta / (alpha^2 + alpha)).
// Variant B: sum over all alpha of lambda(beta / (alpha^2 + alpha + b)), b outside
// the Artin-Schreier image.
IdentityValue artin_schreier_char_sum(const Field& field, Fq beta, ArtinSchreierVariant variant,
                                      std::optional<Fq> b = std::nullopt);

}  // namespace kmoment
