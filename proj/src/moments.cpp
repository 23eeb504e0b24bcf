#include "kmoment/moments.hpp"

#include <algorithm>
#include <string>

namespace kmoment {

namespace {

Int sign(long exponent) { return exponent % 2 == 0 ? 1 : -1; }

// sum_{t=j}^{h} t! S(h,t) 2^{h-t} C(N-j, N-t)
Int pless_inner(const Int& length, int j, int h) {
  Int total = 0;
  for (int t = j; t <= h; ++t) {
    total += factorial(static_cast<unsigned long>(t)) * stirling2(h, t) * ipow(2L, static_cast<unsigned long>(h - t)) *
             binomial(length - j, static_cast<long>(t - j));
  }
  return total;
}

Int shift_for(const RecursionInput& input, MomentKind kind) {
  const Int q = input.q;
  switch (kind) {
    case MomentKind::MkMinus:
      return input.b;
    case MomentKind::Mk2Plus:
      return input.b - q * q;
    case MomentKind::MkEvenPlus:
      return input.b - q * q + q;
  }
  return 0;
}

}  // namespace

Int stirling2(int h, int t) {
  if (h < 0 || t < 0 || h > 64) throw InvalidArgument("stirling2 needs 0 <= h <= 64 and t >= 0");
  if (t > h) return 0;
  Int sum = 0;
  for (int j = 0; j <= t; ++j) {
    sum += sign(t - j) * binomial(t, j) * ipow(Int(j), static_cast<unsigned long>(h));
  }
  return require_integer(ratio(sum, factorial(static_cast<unsigned long>(t))), "Stirling number");
}

PlessSides pless_sides(const WeightDistribution& code_weights, const std::vector<Int>& dual_weights, int k, int h) {
  if (!code_weights.complete) throw InvalidArgument("Pless identity needs the full weight distribution");
  if (h < 0) throw InvalidArgument("Pless identity needs h >= 0");
  const long length = static_cast<long>(code_weights.counts.size()) - 1;
  PlessSides out;
  for (long j = 0; j <= length; ++j) out.lhs += ipow(Int(j), static_cast<unsigned long>(h)) * code_weights.counts[j];

  const long top = std::min<long>(length, h);
  for (long j = 0; j <= top; ++j) {
    const Int dual = j < static_cast<long>(dual_weights.size()) ? dual_weights[j] : Int(0);
    if (dual == 0) continue;
    Rational inner = 0;
    for (int t = static_cast<int>(j); t <= h; ++t) {
      // 2^{k-t}, possibly fractional.
      const Rational power = k >= t ? Rational(ipow(2L, static_cast<unsigned long>(k - t)))
                                    : ratio(Int(1), ipow(2L, static_cast<unsigned long>(t - k)));
      inner += Rational(factorial(static_cast<unsigned long>(t)) * stirling2(h, t) *
                        binomial(Int(length - j), static_cast<long>(t - j))) *
               power;
    }
    out.rhs += Rational(sign(j) * dual) * inner;
  }
  return out;
}

bool pless_check(const WeightDistribution& code_weights, const std::vector<Int>& dual_weights, int k, int h) {
  return pless_sides(code_weights, dual_weights, k, h).holds();
}

RecursionInput make_recursion_input(const CodeInstance& code, int h_max, WeightMethod method, const Budget& budget) {
  if (h_max < 0) throw InvalidArgument("h_max must be >= 0");
  RecursionInput input;
  input.family = code.family;
  input.n = code.n;
  input.q = code.q();
  input.a = code.constants.a;
  input.b = code.constants.b;
  input.length = code.constants.length;
  input.h_max = h_max;
  input.weights = weight_distribution(code, static_cast<std::size_t>(h_max), method, budget).counts;
  return input;
}

std::string to_string(MomentKind kind) {
  switch (kind) {
    case MomentKind::MkMinus:
      return "mk_minus";
    case MomentKind::Mk2Plus:
      return "mk2_plus";
    case MomentKind::MkEvenPlus:
      return "mk_even_plus";
  }
  return "unknown";
}

bool recursion_admissible(Family family, int n, long q, MomentKind kind) {
  if (kind == MomentKind::MkMinus) {
    return family == Family::Minus && n % 2 == 1 && (n >= 3 || q >= 8);
  }
  return family == Family::Plus && n >= 2 && n % 2 == 0 && q >= 4;
}

RecursionStep recursion_step(const RecursionInput& input, MomentKind kind, int h, const std::vector<Int>& lower) {
  if (h < 1) throw InvalidArgument("recursion step needs h >= 1");
  if (static_cast<int>(lower.size()) < h) throw InvalidArgument("recursion step needs all lower moments");
  const Int shift = shift_for(input, kind);
  const auto uh = static_cast<unsigned long>(h);

  RecursionStep step;
  for (int l = 0; l < h; ++l) {
    step.history += sign(h + l + 1) * binomial(h, l) * ipow(shift, uh - static_cast<unsigned long>(l)) * lower[l];
  }

  const long top = input.length < h ? input.length.get_si() : h;
  if (static_cast<long>(input.weights.size()) <= top) {
    throw InvalidArgument("recursion needs C_j for j <= " + std::to_string(top));
  }
  Int sum = 0;
  for (long j = 0; j <= top; ++j) {
    sum += sign(h + j) * input.weights[j] * pless_inner(input.length, static_cast<int>(j), h);
  }
  step.weight_term = ratio(Int(input.q) * sum, ipow(input.a, uh));
  return step;
}

MomentTable recursive_moments(const RecursionInput& input, MomentKind kind, bool allow_degenerate) {
  const bool family_ok = (kind == MomentKind::MkMinus) == (input.family == Family::Minus);
  if (!family_ok) throw InvalidArgument(to_string(kind) + " does not belong to family " + to_string(input.family));
  require_family_parity(input.family, input.n);
  if (!allow_degenerate && !recursion_admissible(input.family, input.n, input.q, kind)) {
    throw InvalidArgument("recursion not valid for n=" + std::to_string(input.n) + ", q=" + std::to_string(input.q) +
                          ": the dual code is degenerate");
  }
  if (input.weights.empty() || input.weights[0] != 1) throw InvalidArgument("weight distribution must have C_0 = 1");

  MomentTable table;
  table.m = kind == MomentKind::Mk2Plus ? 2 : 1;
  table.exponent_step = kind == MomentKind::MkEvenPlus ? 2 : 1;
  table.h_max = input.h_max;
  table.source = MomentTable::Source::Recursion;
  table.values.push_back(Int(input.q - 1));
  for (int h = 1; h <= input.h_max; ++h) {
    const RecursionStep step = recursion_step(input, kind, h, table.values);
    table.values.push_back(require_integer(Rational(step.history) + step.weight_term,
                                           "recursive moment h=" + std::to_string(h)));
  }
  return table;
}

bool ExpansionCheck::holds() const {
  return std::all_of(rhs.begin(), rhs.end(), [&](const Rational& value) { return Rational(lhs) == value; });
}

ExpansionCheck moment_expansion_check(const CodeInstance& code, int h, const Budget& budget) {
  if (h < 0) throw InvalidArgument("expansion check needs h >= 0");
  const Field& field = code.field;
  const auto uh = static_cast<unsigned long>(h);
  ExpansionCheck out;
  for (Fq a : field.units()) out.lhs += ipow(dual_weight(code, a, Mode::Enumerated), uh);

  const Int q = field.q();
  const Rational scale = ratio(ipow(code.constants.a, uh), ipow(2L, uh));
  auto expand = [&](const Int& shift, const std::vector<Int>& moments, int stride) -> Rational {
    Int sum = 0;
    for (int l = 0; l <= h; ++l) {
      sum += sign(l) * binomial(h, l) * ipow(shift, uh - static_cast<unsigned long>(l)) * moments[l * stride];
    }
    return scale * Rational(sum);
  };

  if (code.family == Family::Minus) {
    out.rhs.push_back(expand(code.constants.b, brute_moments(field, 1, h, budget).values, 1));
  } else {
    out.rhs.push_back(expand(code.constants.b - q * q + q, brute_moments(field, 1, 2 * h, budget).values, 2));
    out.rhs.push_back(expand(code.constants.b - q * q, brute_moments(field, 2, h, budget).values, 1));
  }
  return out;
}

}  // namespace kmoment
