#include "kmoment/family.hpp"

#include "kmoment/errors.hpp"

namespace kmoment {

std::string to_string(Family family) { return family == Family::Minus ? "minus" : "plus"; }

Family parse_family(const std::string& text) {
  if (text == "minus" || text == "-") return Family::Minus;
  if (text == "plus" || text == "+") return Family::Plus;
  throw InvalidArgument("unknown family '" + text + "' (expected minus or plus)");
}

void require_family_parity(Family family, int n) {
  if (n < 1) throw InvalidArgument("n must be positive");
  if (family == Family::Minus && n % 2 == 0) throw InvalidArgument("family minus needs odd n");
  if (family == Family::Plus && n % 2 == 1) throw InvalidArgument("family plus needs even n");
}

int coset_index(Family family, int n) {
  require_family_parity(family, n);
  return family == Family::Minus ? n - 1 : n - 2;
}

Int gl_order(int n, long q) {
  Int order = 1;
  const Int qn = ipow(q, static_cast<unsigned long>(n));
  for (int j = 0; j < n; ++j) order *= qn - ipow(q, static_cast<unsigned long>(j));
  return order;
}

Int q_binomial(int n, int r, long q) {
  if (r < 0 || r > n) return 0;
  Int numerator = 1;
  Int denominator = 1;
  for (int j = 0; j < r; ++j) {
    numerator *= ipow(q, static_cast<unsigned long>(n - j)) - 1;
    denominator *= ipow(q, static_cast<unsigned long>(r - j)) - 1;
  }
  return numerator / denominator;
}

namespace {

Int product_of(long q, int count, int step, int offset) {
  // prod_{j=1}^{count} (q^{step j + offset} - 1)
  Int out = 1;
  for (int j = 1; j <= count; ++j) out *= ipow(q, static_cast<unsigned long>(step * j + offset)) - 1;
  return out;
}

}  // namespace

FamilyConstants family_constants(Family family, int n, long q) {
  require_family_parity(family, n);
  FamilyConstants out;
  const auto un = static_cast<unsigned long>(n);
  if (family == Family::Minus) {
    const int half = (n - 1) / 2;
    out.a = ipow(q, (5 * un * un - 1) / 4) * q_binomial(n, 1, q) * product_of(q, half, 2, -1);
    out.b = ipow(q, (un - 1) * (un - 1) / 4) * (ipow(q, un) - 1) * product_of(q, half, 2, 0);
  } else {
    const int half = (n - 2) / 2;
    out.a = ipow(q, (5 * un * un - 2 * un) / 4) * q_binomial(n, 2, q) * product_of(q, half, 2, -1);
    out.b = ipow(q, (un - 2) * (un - 2) / 4) * (ipow(q, un) - 1) * (ipow(q, un - 1) - 1) *
            product_of(q, half, 2, 0);
  }
  out.length = out.a * out.b;
  return out;
}

}  // namespace kmoment
