#pragma once

#include <vector>

#include "kmoment/char_sums.hpp"
#include "kmoment/codes.hpp"
#include "kmoment/exact.hpp"
#include "kmoment/family.hpp"

namespace kmoment {

// Stirling number of the second kind from the alternating binomial sum, h <= 64.
Int stirling2(int h, int t);

struct PlessSides {
  Int lhs;
  Rational rhs;

  bool holds() const { return Rational(lhs) == rhs; }
};

// Both sides of the binary Pless power moment identity for a code B of
// dimension k with full weight distribution `code_weights` and dual weight
// distribution `dual_weights` (index = weight).
PlessSides pless_sides(const WeightDistribution& code_weights, const std::vector<Int>& dual_weights, int k, int h);
bool pless_check(const WeightDistribution& code_weights, const std::vector<Int>& dual_weights, int k, int h);

struct RecursionInput {
  Family family = Family::Minus;
  int n = 1;
  long q = 2;
  Int a;
  Int b;
  Int length;
  std::vector<Int> weights;  // C_0 .. C_{min(N, h_max)}
  int h_max = 0;
};

// Pulls A, B, N and the low-weight counts out of a code.
RecursionInput make_recursion_input(const CodeInstance& code, int h_max,
                                    WeightMethod method = WeightMethod::ClosedForm, const Budget& budget = {});

enum class MomentKind {
  MkMinus,     // MK^h from the minus family
  Mk2Plus,     // MK_2^h from the plus family
  MkEvenPlus,  // MK^{2h} from the plus family
};

std::string to_string(MomentKind kind);

// True when the dual code has dimension r, so the recursion is valid.
bool recursion_admissible(Family family, int n, long q, MomentKind kind);

// The two parts of one recursion step: the sum over lower moments and the
// weight-distribution term q A^{-h} sum_j ...
struct RecursionStep {
  Int history;
  Rational weight_term;
};

RecursionStep recursion_step(const RecursionInput& input, MomentKind kind, int h, const std::vector<Int>& lower);

// Moments for h = 0..h_max; values[0] = q - 1. Throws InvalidArgument for
// inadmissible parameters unless allow_degenerate is set, and
// InternalInconsistency when a step is not an integer.
MomentTable recursive_moments(const RecursionInput& input, MomentKind kind, bool allow_degenerate = false);

struct ExpansionCheck {
  Int lhs;                  // sum over a != 0 of w(c(a))^h
  std::vector<Rational> rhs;  // one entry per binomial expansion
  bool holds() const;
};

// Compares the h-th power sum of the dual weights with its expansion in
// brute-force Kloosterman moments (one form for minus, two for plus).
ExpansionCheck moment_expansion_check(const CodeInstance& code, int h, const Budget& budget = {});

}  // namespace kmoment
