#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace kmoment {

using Int = mpz_class;
using Rational = mpq_class;

Int ipow(const Int& base, unsigned long exponent);
Int ipow(long base, unsigned long exponent);

// Binomial coefficient with C(b, a) = 0 whenever a < 0 or a > b.
Int binomial(const Int& b, long a);
Int binomial(long b, long a);

Int factorial(unsigned long n);

// Exact integer value of a rational; throws InternalInconsistency otherwise.
// num / den in lowest terms; mpq arithmetic needs canonical operands.
Rational ratio(const Int& num, const Int& den);

Int require_integer(const Rational& value, const std::string& what);

std::string to_string(const Int& value);
std::string to_string(const Rational& value);

}  // namespace kmoment
