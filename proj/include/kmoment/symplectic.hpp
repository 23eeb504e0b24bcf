#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kmoment/errors.hpp"
#include "kmoment/exact.hpp"
#include "kmoment/family.hpp"
#include "kmoment/field.hpp"

namespace kmoment {

// Square matrix over F_q, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim) {}

  static Matrix identity(int dim);

  int dim() const { return dim_; }
  Fq operator()(int row, int col) const { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }
  Fq& operator()(int row, int col) { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }
  std::span<const Fq> entries() const { return entries_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int dim_ = 0;
  std::vector<Fq> entries_;
};

Matrix multiply(const Field& field, const Matrix& lhs, const Matrix& rhs);
Matrix transpose(const Matrix& m);
// Inverse by Gauss-Jordan elimination; throws InvalidArgument when singular.
Matrix inverse(const Field& field, const Matrix& m);
int rank(const Field& field, const Matrix& m);
Fq matrix_trace(const Matrix& m);

// Injective 64-bit encoding of a matrix; requires dim^2 * r <= 64.
std::uint64_t packed_key(const Field& field, const Matrix& m);

// J = [[0, 1_n], [1_n, 0]].
Matrix make_j(int n);
// Block permutation sigma_r swapping the first r coordinates of each half.
Matrix make_sigma(int n, int r);

// True iff transpose(w) J w = J.
bool is_symplectic(const Field& field, const Matrix& w);
// Lower-left n x n block vanishes; for symplectic w this is membership in P(2n, q).
bool in_parabolic(const Matrix& w);

// GL(n, q) in deterministic order (rows chosen independently, row-major by encoding).
std::vector<Matrix> enumerate_gl(const Field& field, int n, const Budget& budget = {});
// All symmetric n x n matrices.
std::vector<Matrix> enumerate_symmetric(const Field& field, int n, const Budget& budget = {});
// [[A, 0], [0, A^{-t}]] [[1, B], [0, 1]].
Matrix parabolic_element(const Field& field, const Matrix& a, const Matrix& b);
// Every element of P(2n, q) exactly once.
std::vector<Matrix> enumerate_parabolic(const Field& field, int n, const Budget& budget = {});

// A_r = {w in P : sigma_r w sigma_r^{-1} in P}.
std::vector<Matrix> stabilizer_subgroup(const Field& field, int n, int r, const Budget& budget = {});
// Representatives of the right cosets A_r \ P, first-met in the order of enumerate_parabolic.
std::vector<Matrix> transversal(const Field& field, int n, int r, const Budget& budget = {});

// Counts N(beta) indexed by the encoding of beta.
struct FqHistogram {
  std::vector<Int> counts;

  Int total() const;
  const Int& at(Fq beta) const { return counts.at(beta.bits); }
};

// Calls `visit` on each element of P sigma_r P exactly once (products p sigma_r t
// over p in P and t in the transversal). With check_duplicates, a repeated
// element raises InternalInconsistency.
void for_each_double_coset_element(const Field& field, int n, int r,
                                   const std::function<void(const Matrix&)>& visit,
                                   const Budget& budget = {}, bool check_duplicates = true);

struct DoubleCosetTraces {
  int n = 0;
  int r = 0;
  Int size;
  FqHistogram histogram;
  // Tr g_1, Tr g_2, ... in enumeration order; empty unless requested.
  std::vector<Fq> sequence;
};

DoubleCosetTraces enumerate_double_coset(const Field& field, int n, int r, const Budget& budget = {},
                                         bool keep_sequence = false);

enum class Mode { Enumerated, Predicted };

// Trace statistics. Predicted mode covers the two code families only:
// r = n-1 with n odd and r = n-2 with n even.
FqHistogram trace_histogram(const Field& field, int n, int r, Mode mode, const Budget& budget = {});
FqHistogram predicted_trace_histogram(const Field& field, int n, int r);
FqHistogram predicted_family_histogram(const Field& field, Family family, int n);

// sum over w in P sigma_r P of lambda(a Tr w).
Int dc_character_sum(const Field& field, int n, int r, Fq a, Mode mode, const Budget& budget = {});
Int character_sum_from_histogram(const Field& field, const FqHistogram& histogram, Fq a);
// Closed form for every r; vanishes for odd r.
Int predicted_dc_character_sum(const Field& field, int n, int r, Fq a);
// Family specializations A^- K(lambda; a) and A^+ (K(lambda; a)^2 + q^2 - q).
Int family_character_sum(const Field& field, Family family, int n, Fq a);

Int symplectic_order(int n, long q);
// |Sp(2n, q)| by testing all q^{4n^2} matrices; only for tiny cases.
Int brute_symplectic_order(const Field& field, int n, const Budget& budget = {});

// Nonsingular alternating size x size matrices. `printed` selects the
// product of q^{2j-1}; the default is the product of (q^{2j-1} - 1), which
// agrees with enumeration.
Int alternating_count_formula(int size, long q, bool printed = false);
Int count_alternating(const Field& field, int size, const Budget& budget = {});

struct SizeReport {
  int n = 0;
  long q = 0;
  std::vector<Int> gl_orders;               // g_0 .. g_n
  std::vector<Int> q_binomials;             // [n r]_q, r = 0..n
  Int parabolic_order;                      // |P(2n, q)|
  std::vector<Int> stabilizer_orders;       // |A_r|
  std::vector<Int> transversal_sizes;       // |A_r \ P|
  std::vector<Int> double_coset_sizes;      // |P sigma_r P|
  std::optional<Int> dc_minus;              // |DC^-(n, q)| for odd n
  std::optional<Int> dc_plus;               // |DC^+(n, q)| for even n
  Int symplectic_order;
  std::vector<Int> alternating_counts;      // a_r, r = 0..n
  std::vector<Int> alternating_counts_printed;
  bool q_binomial_theorem_holds = false;
  bool partition_holds = false;
  bool stabilizer_index_holds = false;
};

SizeReport predicted_sizes(int n, long q);

}  // namespace kmoment
