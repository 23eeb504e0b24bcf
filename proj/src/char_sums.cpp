#include "kmoment/char_sums.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace kmoment {

namespace {

std::uint64_t saturating_power(std::uint64_t base, int exponent) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return UINT64_MAX;
    result *= base;
  }
  return result;
}

std::uint64_t tuple_count(const Field& field, int m) { return saturating_power(field.q() - 1, m); }

// sum over (alpha_1..alpha_m) in (F_q^*)^m of lambda(c (alpha_1 + .. + alpha_m + a / prod)).
std::int64_t kloosterman_raw(const Field& field, int m, Fq a, Fq c) {
  const auto units = field.units();
  std::int64_t total = 0;
  // Depth-first over the tuple, carrying the partial sum and product.
  std::function<void(int, Fq, Fq)> walk = [&](int depth, Fq sum, Fq product) {
    if (depth == m) {
      const Fq argument = sum + field.div(a, product);
      total += field.lambda(field.mul(c, argument));
      return;
    }
    for (Fq alpha : units) walk(depth + 1, sum + alpha, field.mul(product, alpha));
  };
  if (m == 1) {
    // Hot path for the ordinary Kloosterman sum.
    for (Fq alpha : units) total += field.lambda(field.mul(c, alpha + field.div(a, alpha)));
  } else {
    walk(0, field.zero(), field.one());
  }
  return total;
}

void check_sum_arguments(int m, Fq a, Fq c) {
  if (m < 1) throw InvalidArgument("Kloosterman dimension m must be >= 1");
  if (a.is_zero()) throw InvalidArgument("Kloosterman parameter a must be nonzero");
  if (c.is_zero()) throw InvalidArgument("character twist c must be nonzero");
}

}  // namespace

std::uint64_t IntHistogram::total() const {
  std::uint64_t sum = 0;
  for (const auto& [value, count] : counts) sum += count;
  return sum;
}

Int kloosterman_m(const Field& field, int m, Fq a, Fq c, const Budget& budget) {
  check_sum_arguments(m, a, c);
  budget.require_iterations(tuple_count(field, m), "kloosterman_m");
  return Int(static_cast<long>(kloosterman_raw(field, m, a, c)));
}

Int kloosterman(const Field& field, Fq a, Fq c) {
  check_sum_arguments(1, a, c);
  return Int(static_cast<long>(kloosterman_raw(field, 1, a, c)));
}

std::vector<Int> kloosterman_table(const Field& field, int m, Fq c, const Budget& budget) {
  check_sum_arguments(m, field.one(), c);
  const std::uint64_t per_value = tuple_count(field, m);
  const std::uint64_t needed =
      per_value > UINT64_MAX / (field.q() - 1) ? UINT64_MAX : per_value * (field.q() - 1);
  budget.require_iterations(needed, "kloosterman_table");
  std::vector<Int> table(field.q());
  for (Fq a : field.units()) table[a.bits] = static_cast<long>(kloosterman_raw(field, m, a, c));
  return table;
}

Int moment(const Field& field, int m, int h, const Budget& budget) {
  if (h < 0) throw InvalidArgument("moment order h must be >= 0");
  const auto table = kloosterman_table(field, m, field.one(), budget);
  Int total = 0;
  for (Fq a : field.units()) total += ipow(table[a.bits], static_cast<unsigned long>(h));
  return total;
}

MomentTable brute_moments(const Field& field, int m, int h_max, const Budget& budget) {
  if (h_max < 0) throw InvalidArgument("h_max must be >= 0");
  const auto table = kloosterman_table(field, m, field.one(), budget);
  MomentTable out;
  out.m = m;
  out.h_max = h_max;
  out.source = MomentTable::Source::Brute;
  out.values.assign(static_cast<std::size_t>(h_max) + 1, Int(0));
  for (Fq a : field.units()) {
    Int power = 1;
    for (int h = 0; h <= h_max; ++h) {
      out.values[h] += power;
      power *= table[a.bits];
    }
  }
  return out;
}

IntHistogram value_histogram(const Field& field) {
  if (field.r() < 2) throw InvalidArgument("value histogram needs r >= 2");
  IntHistogram hist;
  for (Fq a : field.units()) ++hist.counts[kloosterman(field, a).get_si()];
  return hist;
}

Int gl_kloosterman(const Field& field, int t, Fq a, GlMethod method, Fq c) {
  if (t < 0 || t > 6) throw InvalidArgument("GL Kloosterman order t must lie in 0..6");
  check_sum_arguments(1, a, c);
  if (t == 0) return 1;
  const Int k = kloosterman(field, a, c);
  const Int q = field.q();

  if (method == GlMethod::Recursive) {
    Int before = 1;  // K_GL(0)
    Int current = k;  // K_GL(1)
    for (int s = 2; s <= t; ++s) {
      const auto su = static_cast<unsigned long>(s);
      Int next = ipow(q, su - 1) * current * k + ipow(q, 2 * su - 2) * (ipow(q, su - 1) - 1) * before;
      before = std::move(current);
      current = std::move(next);
    }
    return current;
  }

  // Closed form: sum over l of q^{(t-2)(t+1)/2 + l} K^{t+2-2l} times the sum over
  // chains 2l-1 <= j_{l-1} <= ... <= j_1 <= t+1 of prod (q^{j_v - 2v} - 1).
  Int total = 0;
  const int base_exponent = (t - 2) * (t + 1) / 2;
  for (int l = 1; l <= (t + 2) / 2; ++l) {
    Int chains = 0;
    std::function<void(int, int, const Int&)> extend = [&](int v, int upper, const Int& product) {
      if (v == l) {
        chains += product;
        return;
      }
      for (int j = 2 * l - 1; j <= upper; ++j) {
        extend(v + 1, j, product * (ipow(q, static_cast<unsigned long>(j - 2 * v)) - 1));
      }
    };
    extend(1, t + 1, Int(1));
    const int exponent = base_exponent + l;
    if (exponent < 0) throw InternalInconsistency("negative power of q in GL Kloosterman closed form");
    total += ipow(q, static_cast<unsigned long>(exponent)) * ipow(k, static_cast<unsigned long>(t + 2 - 2 * l)) *
             chains;
  }
  return total;
}

IdentityValue twisted_sum(const Field& field, int m, Fq beta, const Budget& budget) {
  if (m < 1) throw InvalidArgument("twisted sum needs m >= 1");
  const auto table = kloosterman_table(field, m, field.one(), budget);
  IdentityValue out;
  for (Fq a : field.units()) out.measured += field.lambda(field.mul(a, beta)) * table[a.bits];

  const Int sign = (m % 2 == 1) ? 1 : -1;  // (-1)^{m+1}
  if (beta.is_zero()) {
    out.predicted = sign;
  } else {
    const Fq beta_inv = field.inv(beta);
    const Int lower = (m == 1) ? Int(field.lambda(beta_inv)) : kloosterman_m(field, m - 1, beta_inv, field.one(), budget);
    out.predicted = Int(field.q()) * lower + sign;
  }
  return out;
}

IdentityValue artin_schreier_char_sum(const Field& field, Fq beta, ArtinSchreierVariant variant,
                                      std::optional<Fq> b) {
  if (beta.is_zero()) throw InvalidArgument("Artin-Schreier character sum needs beta != 0");
  IdentityValue out;
  const Int k = kloosterman(field, beta);
  if (variant == ArtinSchreierVariant::A) {
    long sum = 0;
    for (Fq alpha : field.elements()) {
      const Fq denominator = field.square(alpha) + alpha;
      if (denominator.is_zero()) continue;  // alpha = 0 or 1
      sum += field.lambda(field.div(beta, denominator));
    }
    out.measured = sum;
    out.predicted = k - 1;
    return out;
  }

  if (!b) throw InvalidArgument("Artin-Schreier variant b needs the parameter b");
  const auto image = field.artin_schreier_image();
  if (std::binary_search(image.begin(), image.end(), *b)) {
    throw InvalidArgument("x^2 + x + b is reducible: b lies in the Artin-Schreier image");
  }
  long sum = 0;
  for (Fq alpha : field.elements()) {
    sum += field.lambda(field.div(beta, field.square(alpha) + alpha + *b));
  }
  out.measured = sum;
  out.predicted = -k - 1;
  return out;
}

}  // namespace kmoment
