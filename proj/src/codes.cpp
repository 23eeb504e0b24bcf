#include "kmoment/codes.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

#include "kmoment/char_sums.hpp"

namespace kmoment {

namespace {

using Poly = std::vector<Int>;

// Truncated product of two polynomials of degree <= top.
Poly multiply(const Poly& lhs, const Poly& rhs, std::size_t top) {
  Poly out(top + 1, Int(0));
  for (std::size_t i = 0; i < lhs.size() && i <= top; ++i) {
    if (lhs[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.size() && i + j <= top; ++j) out[i + j] += lhs[i] * rhs[j];
  }
  return out;
}

// Even and odd parts of (1 + x)^count, truncated.
std::pair<Poly, Poly> parity_parts(const Int& count, std::size_t top) {
  Poly even(top + 1, Int(0));
  Poly odd(top + 1, Int(0));
  for (std::size_t k = 0; k <= top; ++k) {
    (k % 2 == 0 ? even : odd)[k] = binomial(count, static_cast<long>(k));
  }
  return {std::move(even), std::move(odd)};
}

std::size_t to_size(const Int& value) { return std::stoull(value.get_str()); }

Int minus_multiplicity(const Field& field, const FamilyConstants& k, Fq beta) {
  const Int q = field.q();
  Int shift = 1;
  if (!beta.is_zero()) shift = field.trace(field.inv(beta)) == 0 ? Int(q + 1) : Int(1 - q);
  return require_integer(ratio(k.a * (k.b + shift), q), "closed-form multiplicity");
}

Int plus_multiplicity(const Field& field, const FamilyConstants& k, Fq beta) {
  const Int q = field.q();
  Int shift = q * q * q - q * q - 1;
  if (!beta.is_zero()) {
    const Int tau = kloosterman(field, field.inv(beta));
    shift = q * tau - q * q - 1;
  }
  return require_integer(ratio(k.a * (k.b + shift), q), "closed-form multiplicity");
}

WeightDistribution direct_distribution(const CodeInstance& code, std::size_t top, const Budget& budget) {
  const Field& field = code.field;
  const std::uint64_t q = field.q();
  budget.require_iterations(q * q * (top + 1) * (top + 1), "direct weight distribution");
  // state[s]: generating polynomial of selections whose parity pattern sums to s.
  std::vector<Poly> state(q, Poly(top + 1, Int(0)));
  state[0][0] = 1;
  for (Fq beta : field.elements()) {
    const Int& count = code.histogram.at(beta);
    if (count == 0) continue;
    const auto [even, odd] = parity_parts(count, top);
    std::vector<Poly> next(q);
    for (std::uint32_t s = 0; s < q; ++s) {
      next[s] = multiply(state[s], even, top);
      const Poly flipped = multiply(state[s ^ beta.bits], odd, top);
      for (std::size_t j = 0; j <= top; ++j) next[s][j] += flipped[j];
    }
    state = std::move(next);
  }
  WeightDistribution out;
  out.counts = std::move(state[0]);
  return out;
}

WeightDistribution closed_form_distribution(const CodeInstance& code, std::size_t top, const Budget& budget) {
  const Field& field = code.field;
  struct Slot {
    Fq beta;
    Poly even;
    Poly odd;
  };
  std::vector<Slot> support;
  for (Fq beta : field.elements()) {
    const Int count = code.family == Family::Minus ? minus_multiplicity(field, code.constants, beta)
                                                   : plus_multiplicity(field, code.constants, beta);
    if (count < 0) throw InternalInconsistency("negative closed-form multiplicity");
    if (count == 0) continue;  // only nu_beta = 0 contributes
    auto [even, odd] = parity_parts(count, top);
    support.push_back({beta, std::move(even), std::move(odd)});
  }
  if (support.size() >= 40) throw BudgetExceeded("closed-form weight distribution: support too large");
  const std::uint64_t patterns = std::uint64_t{1} << support.size();
  budget.require_iterations(patterns * support.size() * (top + 1) * (top + 1), "closed-form weight distribution");

  // A weight-j word has nu_beta ones at trace beta; sum nu_beta beta = 0 only
  // depends on which nu_beta are odd.
  WeightDistribution out;
  out.counts.assign(top + 1, Int(0));
  for (std::uint64_t pattern = 0; pattern < patterns; ++pattern) {
    std::uint32_t sum = 0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      if ((pattern >> i) & 1U) sum ^= support[i].beta.bits;
    }
    if (sum != 0) continue;
    Poly term(top + 1, Int(0));
    term[0] = 1;
    for (std::size_t i = 0; i < support.size(); ++i) {
      term = multiply(term, ((pattern >> i) & 1U) ? support[i].odd : support[i].even, top);
    }
    for (std::size_t j = 0; j <= top; ++j) out.counts[j] += term[j];
  }
  return out;
}

WeightDistribution macwilliams_distribution(const CodeInstance& code, std::size_t top) {
  const std::size_t length = code.length();
  const Int big_n = static_cast<unsigned long>(length);
  const auto weights = dual_weights(code);
  std::vector<Int> totals(top + 1, Int(0));
  // C_j = q^{-1} sum_a K_j(w(c(a))), with Krawtchouk values from
  // (j+1) K_{j+1} = (N - 2w) K_j - (N - j + 1) K_{j-1}.
  for (const Int& w : weights) {
    Int previous = 0;
    Int current = 1;
    for (std::size_t j = 0; j <= top; ++j) {
      totals[j] += current;
      if (j == top) break;
      const Int jj = static_cast<unsigned long>(j);
      Int next = (big_n - 2 * w) * current - (big_n - jj + 1) * previous;
      if (next % (jj + 1) != 0) throw InternalInconsistency("Krawtchouk recurrence lost integrality");
      next /= jj + 1;
      previous = std::move(current);
      current = std::move(next);
    }
  }
  WeightDistribution out;
  out.counts.reserve(top + 1);
  const Int q = code.q();
  for (Int& total : totals) {
    if (total % q != 0) throw InternalInconsistency("MacWilliams transform is not integral");
    out.counts.push_back(total / q);
  }
  return out;
}

int kernel_dimension(const Field& field, const FqHistogram& histogram) {
  std::uint32_t kernel = 0;
  for (Fq a : field.elements()) {
    bool vanishes = true;
    for (Fq beta : field.elements()) {
      if (histogram.at(beta) != 0 && field.trace(field.mul(a, beta)) == 1) {
        vanishes = false;
        break;
      }
    }
    if (vanishes) ++kernel;
  }
  return std::countr_zero(kernel);
}

CodeInstance finish(CodeInstance code) {
  if (code.histogram.total() != code.constants.length) {
    throw InternalInconsistency("trace histogram total differs from A * B");
  }
  code.dual_dimension = code.field.r() - kernel_dimension(code.field, code.histogram);
  return code;
}

}  // namespace

std::size_t CodeInstance::length() const { return to_size(constants.length); }

std::size_t BitVector::weight() const {
  std::size_t total = 0;
  for (std::uint64_t word : words) total += static_cast<std::size_t>(std::popcount(word));
  return total;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  for (std::size_t i = 0; i < words.size(); ++i) words[i] ^= other.words[i];
  return *this;
}

std::string to_string(WeightMethod method) {
  switch (method) {
    case WeightMethod::Direct:
      return "direct";
    case WeightMethod::MacWilliams:
      return "macwilliams";
    case WeightMethod::ClosedForm:
      return "closed_form";
  }
  return "unknown";
}

CodeInstance build_code(const Field& field, Family family, int n, const BuildOptions& options) {
  const int r = coset_index(family, n);
  CodeInstance code{field, family, n, family_constants(family, n, field.q()), {}, HistogramSource::Enumerated, {}, 0};

  bool enumerate = options.source != BuildOptions::Source::Predicted;
  if (options.source == BuildOptions::Source::Auto) {
    const Int size = code.constants.length;
    enumerate = size <= Int(static_cast<unsigned long>(options.budget.stored_matrices)) &&
                size <= Int(static_cast<unsigned long>(options.budget.iterations));
  }
  if (enumerate) {
    auto traces = enumerate_double_coset(field, n, r, options.budget, true);
    code.histogram = std::move(traces.histogram);
    code.coordinates = std::move(traces.sequence);
    code.source = HistogramSource::Enumerated;
  } else {
    code.histogram = predicted_family_histogram(field, family, n);
    code.source = HistogramSource::Predicted;
  }
  return finish(std::move(code));
}

CodeInstance code_from_coordinates(const Field& field, Family family, int n, std::vector<Fq> coordinates) {
  CodeInstance code{field, family, n, family_constants(family, n, field.q()), {}, HistogramSource::Enumerated, {}, 0};
  code.histogram.counts.assign(field.q(), Int(0));
  for (Fq t : coordinates) code.histogram.counts.at(t.bits) += 1;
  code.coordinates = std::move(coordinates);
  code.source = HistogramSource::Enumerated;
  return finish(std::move(code));
}

int expected_dual_dimension(Family family, int n, const Field& field) {
  require_family_parity(family, n);
  const int r = field.r();
  const long q = field.q();
  if (family == Family::Minus) return (n >= 3 || q >= 8) ? r : r - 1;
  return (n >= 4 || q >= 4) ? r : r - 1;
}

std::vector<Fq> coordinate_layout(const CodeInstance& code) {
  if (!code.coordinates.empty()) return code.coordinates;
  std::vector<Fq> out;
  out.reserve(code.length());
  for (Fq beta : code.field.elements()) out.insert(out.end(), to_size(code.histogram.at(beta)), beta);
  return out;
}

DualCodeword dual_codeword(const CodeInstance& code, Fq a) {
  const auto layout = coordinate_layout(code);
  DualCodeword out{a, BitVector(layout.size())};
  for (std::size_t j = 0; j < layout.size(); ++j) {
    if (code.field.trace(code.field.mul(a, layout[j])) == 1) out.bits.set(j);
  }
  return out;
}

Int dual_weight(const CodeInstance& code, Fq a, Mode mode) {
  const Field& field = code.field;
  if (mode == Mode::Enumerated) {
    if (!code.coordinates.empty()) return static_cast<unsigned long>(dual_codeword(code, a).bits.weight());
    Int weight = 0;
    for (Fq beta : field.elements()) {
      if (field.trace(field.mul(a, beta)) == 1) weight += code.histogram.at(beta);
    }
    return weight;
  }
  if (a.is_zero()) return 0;
  const FamilyConstants& k = code.constants;
  const Int kl = kloosterman(field, a);
  const Int q = field.q();
  const Rational value = code.family == Family::Minus ? ratio(k.a * (k.b - kl), 2)
                                                      : ratio(k.a * (k.b - q * q + q - kl * kl), 2);
  return require_integer(value, "predicted dual weight");
}

std::vector<Int> dual_weights(const CodeInstance& code) {
  std::vector<Int> out;
  for (Fq a : code.field.elements()) out.push_back(dual_weight(code, a, Mode::Enumerated));
  return out;
}

std::vector<Int> dual_distribution(const CodeInstance& code) {
  const std::size_t length = code.length();
  std::vector<Int> out(length + 1, Int(0));
  for (const Int& w : dual_weights(code)) out[to_size(w)] += 1;
  // a -> c(a) is 2^{r - dim}-to-one.
  const Int multiplicity = Int(1) << (code.field.r() - code.dual_dimension);
  for (Int& c : out) {
    if (c % multiplicity != 0) throw InternalInconsistency("dual weights do not respect the kernel");
    c /= multiplicity;
  }
  return out;
}

WeightDistribution weight_distribution(const CodeInstance& code, std::size_t j_max, WeightMethod method,
                                       const Budget& budget) {
  const std::size_t length = code.length();
  const std::size_t top = std::min(j_max, length);
  WeightDistribution out;
  switch (method) {
    case WeightMethod::Direct:
      out = direct_distribution(code, top, budget);
      break;
    case WeightMethod::ClosedForm:
      out = closed_form_distribution(code, top, budget);
      break;
    case WeightMethod::MacWilliams:
      if (top == length && length > 20000) {
        throw BudgetExceeded("full MacWilliams transform limited to length 20000");
      }
      out = macwilliams_distribution(code, top);
      break;
  }
  out.complete = top == length;
  return out;
}

DelsarteReport verify_delsarte(const CodeInstance& code, std::size_t max_length) {
  const std::size_t length = code.length();
  if (length > max_length) {
    throw BudgetExceeded("Delsarte verification limited to length " + std::to_string(max_length));
  }
  const Field& field = code.field;
  const auto layout = coordinate_layout(code);

  // Row k holds bit k of every coordinate: u . v = 0 in F_q splits into r binary checks.
  std::vector<BitVector> rows(field.r(), BitVector(length));
  for (std::size_t j = 0; j < length; ++j) {
    for (int k = 0; k < field.r(); ++k) {
      if ((layout[j].bits >> k) & 1U) rows[k].set(j);
    }
  }

  // Echelon basis over F_2.
  std::vector<BitVector> basis;
  std::vector<std::size_t> pivots;
  for (BitVector row : rows) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (row.get(pivots[i])) row ^= basis[i];
    }
    std::size_t pivot = 0;
    while (pivot < length && !row.get(pivot)) ++pivot;
    if (pivot == length) continue;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].get(pivot)) basis[i] ^= row;
    }
    basis.push_back(std::move(row));
    pivots.push_back(pivot);
  }

  DelsarteReport report;
  report.rank = static_cast<int>(basis.size());
  report.expected_rank = expected_dual_dimension(code.family, code.n, field);

  std::set<std::vector<std::uint64_t>> row_space;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << basis.size()); ++mask) {
    BitVector v(length);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if ((mask >> i) & 1U) v ^= basis[i];
    }
    row_space.insert(v.words);
  }
  std::set<std::vector<std::uint64_t>> traced;
  for (Fq a : field.elements()) traced.insert(dual_codeword(code, a).bits.words);
  report.row_space_matches = row_space == traced;
  return report;
}

}  // namespace kmoment
