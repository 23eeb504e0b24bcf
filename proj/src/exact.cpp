#include "kmoment/exact.hpp"

#include "kmoment/errors.hpp"

namespace kmoment {

void Budget::require_iterations(std::uint64_t needed, const std::string& what) const {
  if (needed > iterations) {
    throw BudgetExceeded(what + ": needs " + std::to_string(needed) + " iterations, budget is " +
                         std::to_string(iterations));
  }
}

void Budget::require_matrices(std::uint64_t needed, const std::string& what) const {
  if (needed > stored_matrices) {
    throw BudgetExceeded(what + ": needs " + std::to_string(needed) + " matrices, budget is " +
                         std::to_string(stored_matrices));
  }
}

Int ipow(const Int& base, unsigned long exponent) {
  Int result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

Int ipow(long base, unsigned long exponent) { return ipow(Int(base), exponent); }

Int binomial(const Int& b, long a) {
  if (a < 0 || b < 0 || b < a) return 0;
  Int result;
  mpz_bin_ui(result.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(a));
  return result;
}

Int binomial(long b, long a) { return binomial(Int(b), a); }

Int factorial(unsigned long n) {
  Int result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

Rational ratio(const Int& num, const Int& den) {
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Int require_integer(const Rational& value, const std::string& what) {
  Rational canonical = value;
  canonical.canonicalize();
  if (canonical.get_den() != 1) {
    throw InternalInconsistency(what + ": expected an integer, got " + canonical.get_str());
  }
  return canonical.get_num();
}

std::string to_string(const Int& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str();
}

}  // namespace kmoment
