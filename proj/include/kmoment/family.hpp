#pragma once

#include <string>

#include "kmoment/exact.hpp"

namespace kmoment {

// The two code families: DC^-(n,q) = P sigma_{n-1} P for odd n and
// DC^+(n,q) = P sigma_{n-2} P for even n.
enum class Family { Minus, Plus };

std::string to_string(Family family);
Family parse_family(const std::string& text);

// Throws InvalidArgument unless n has the parity the family requires.
void require_family_parity(Family family, int n);
// Bruhat index of the family's double coset.
int coset_index(Family family, int n);

// |GL(n, q)|.
Int gl_order(int n, long q);
// Gaussian binomial [n r]_q, zero outside 0 <= r <= n.
Int q_binomial(int n, int r, long q);

// A, B and the code length N = A B of one family member.
struct FamilyConstants {
  Int a;
  Int b;
  Int length;
};

FamilyConstants family_constants(Family family, int n, long q);

}  // namespace kmoment
