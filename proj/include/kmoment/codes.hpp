#pragma once

#include <cstdint>
#include <vector>

#include "kmoment/errors.hpp"
#include "kmoment/exact.hpp"
#include "kmoment/family.hpp"
#include "kmoment/field.hpp"
#include "kmoment/symplectic.hpp"

namespace kmoment {

enum class HistogramSource { Enumerated, Predicted };

// The binary code C(DC^{-/+}(n, q)) = {u : sum u_j Tr g_j = 0 in F_q}.
struct CodeInstance {
  Field field;
  Family family = Family::Minus;
  int n = 1;
  FamilyConstants constants;
  FqHistogram histogram;
  HistogramSource source = HistogramSource::Enumerated;
  // Tr g_j in coordinate order. Empty when the histogram was predicted and
  // no element ordering exists; coordinates are then laid out grouped by beta.
  std::vector<Fq> coordinates;
  // dim of the dual {c(a) : a in F_q}: r minus the dimension of the kernel of a -> c(a).
  int dual_dimension = 0;

  std::size_t length() const;
  long q() const { return field.q(); }
};

struct BuildOptions {
  enum class Source { Auto, Enumerated, Predicted };

  Source source = Source::Auto;
  Budget budget;
};

// Throws InvalidArgument for the wrong parity of n.
CodeInstance build_code(const Field& field, Family family, int n, const BuildOptions& options = {});
// Code over an explicit coordinate sequence (used to permute coordinates).
CodeInstance code_from_coordinates(const Field& field, Family family, int n, std::vector<Fq> coordinates);

// Dimension of the dual code: r, except r - 1 for (minus, 1, 2), (minus, 1, 4)
// and (plus, 2, 2), where a -> c(a) has a kernel of size 2.
int expected_dual_dimension(Family family, int n, const Field& field);

// Coordinates of the code, synthesized from the histogram when needed.
std::vector<Fq> coordinate_layout(const CodeInstance& code);

// Dense F_2 vector.
struct BitVector {
  std::size_t length = 0;
  std::vector<std::uint64_t> words;

  explicit BitVector(std::size_t n = 0) : length(n), words((n + 63) / 64, 0) {}
  bool get(std::size_t i) const { return (words[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t weight() const;
  BitVector& operator^=(const BitVector& other);
  friend bool operator==(const BitVector&, const BitVector&) = default;
};

// c(a) = (tr(a Tr g_j))_j.
struct DualCodeword {
  Fq a;
  BitVector bits;
};

DualCodeword dual_codeword(const CodeInstance& code, Fq a);

// Hamming weight of c(a); measured from the codeword, predicted from A, B and K(lambda; a).
Int dual_weight(const CodeInstance& code, Fq a, Mode mode);

// Weights w(c(a)) for every a in canonical order (a = 0 first).
std::vector<Int> dual_weights(const CodeInstance& code);

// Weight distribution of the dual code, counting each distinct codeword once.
std::vector<Int> dual_distribution(const CodeInstance& code);

struct WeightDistribution {
  std::vector<Int> counts;  // C_0 .. C_{j_max}
  bool complete = false;
};

enum class WeightMethod { Direct, MacWilliams, ClosedForm };

std::string to_string(WeightMethod method);

// C_j for j <= j_max (capped at the length). Direct sums over parity patterns of
// the trace histogram; ClosedForm uses the family formulas; MacWilliams
// transforms the dual weights.
WeightDistribution weight_distribution(const CodeInstance& code, std::size_t j_max, WeightMethod method,
                                       const Budget& budget = {});

struct DelsarteReport {
  int rank = 0;
  int expected_rank = 0;
  bool row_space_matches = false;

  bool ok() const { return row_space_matches && rank == expected_rank; }
};

// Builds the r binary parity rows of the F_q constraint and compares their row
// space with {c(a)}.
DelsarteReport verify_delsarte(const CodeInstance& code, std::size_t max_length = 20000);

}  // namespace kmoment
