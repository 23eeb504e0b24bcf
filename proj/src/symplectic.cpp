#include "kmoment/symplectic.hpp"

#include <string>
#include <unordered_set>

#include "kmoment/char_sums.hpp"

namespace kmoment {

namespace {

void require_n(int n) {
  if (n < 1) throw InvalidArgument("n must be positive");
}

void require_r(int n, int r) {
  require_n(n);
  if (r < 0 || r > n) {
    throw InvalidArgument("coset index r=" + std::to_string(r) + " outside 0.." + std::to_string(n));
  }
}

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

std::uint64_t to_u64(const Int& value) {
  if (value > Int(UINT64_MAX)) return UINT64_MAX;
  return std::stoull(value.get_str());
}

}  // namespace

Matrix Matrix::identity(int dim) {
  Matrix out(dim);
  for (int i = 0; i < dim; ++i) out(i, i) = Fq(1);
  return out;
}

Matrix multiply(const Field& field, const Matrix& lhs, const Matrix& rhs) {
  if (lhs.dim() != rhs.dim()) throw InvalidArgument("matrix dimension mismatch");
  const int d = lhs.dim();
  Matrix out(d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const Fq left = lhs(i, k);
      if (left.is_zero()) continue;
      for (int j = 0; j < d; ++j) out(i, j) = out(i, j) + field.mul(left, rhs(k, j));
    }
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.dim());
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) out(j, i) = m(i, j);
  }
  return out;
}

Matrix inverse(const Field& field, const Matrix& m) {
  const int d = m.dim();
  Matrix work = m;
  Matrix out = Matrix::identity(d);
  for (int col = 0; col < d; ++col) {
    int pivot = col;
    while (pivot < d && work(pivot, col).is_zero()) ++pivot;
    if (pivot == d) throw InvalidArgument("matrix is singular");
    if (pivot != col) {
      for (int j = 0; j < d; ++j) {
        std::swap(work(col, j), work(pivot, j));
        std::swap(out(col, j), out(pivot, j));
      }
    }
    const Fq scale = field.inv(work(col, col));
    for (int j = 0; j < d; ++j) {
      work(col, j) = field.mul(scale, work(col, j));
      out(col, j) = field.mul(scale, out(col, j));
    }
    for (int i = 0; i < d; ++i) {
      if (i == col || work(i, col).is_zero()) continue;
      const Fq factor = work(i, col);
      for (int j = 0; j < d; ++j) {
        work(i, j) = work(i, j) + field.mul(factor, work(col, j));
        out(i, j) = out(i, j) + field.mul(factor, out(col, j));
      }
    }
  }
  return out;
}

int rank(const Field& field, const Matrix& m) {
  const int d = m.dim();
  Matrix work = m;
  int found = 0;
  for (int col = 0; col < d && found < d; ++col) {
    int pivot = found;
    while (pivot < d && work(pivot, col).is_zero()) ++pivot;
    if (pivot == d) continue;
    for (int j = 0; j < d; ++j) std::swap(work(found, j), work(pivot, j));
    const Fq scale = field.inv(work(found, col));
    for (int i = found + 1; i < d; ++i) {
      if (work(i, col).is_zero()) continue;
      const Fq factor = field.mul(work(i, col), scale);
      for (int j = 0; j < d; ++j) work(i, j) = work(i, j) + field.mul(factor, work(found, j));
    }
    ++found;
  }
  return found;
}

Fq matrix_trace(const Matrix& m) {
  Fq sum;
  for (int i = 0; i < m.dim(); ++i) sum = sum + m(i, i);
  return sum;
}

std::uint64_t packed_key(const Field& field, const Matrix& m) {
  const auto bits = static_cast<std::uint64_t>(m.dim()) * m.dim() * field.r();
  if (bits > 64) throw Unsupported("matrix too large for a 64-bit key");
  std::uint64_t key = 0;
  for (Fq entry : m.entries()) key = (key << field.r()) | entry.bits;
  return key;
}

Matrix make_j(int n) {
  require_n(n);
  Matrix out(2 * n);
  for (int i = 0; i < n; ++i) {
    out(i, n + i) = Fq(1);
    out(n + i, i) = Fq(1);
  }
  return out;
}

Matrix make_sigma(int n, int r) {
  require_r(n, r);
  Matrix out(2 * n);
  for (int i = 0; i < n; ++i) {
    if (i < r) {
      out(i, n + i) = Fq(1);
      out(n + i, i) = Fq(1);
    } else {
      out(i, i) = Fq(1);
      out(n + i, n + i) = Fq(1);
    }
  }
  return out;
}

bool is_symplectic(const Field& field, const Matrix& w) {
  if (w.dim() < 2 || w.dim() % 2 != 0) throw InvalidArgument("symplectic test needs an even dimension");
  const Matrix j = make_j(w.dim() / 2);
  return multiply(field, multiply(field, transpose(w), j), w) == j;
}

bool in_parabolic(const Matrix& w) {
  const int n = w.dim() / 2;
  for (int i = n; i < 2 * n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!w(i, j).is_zero()) return false;
    }
  }
  return true;
}

std::vector<Matrix> enumerate_gl(const Field& field, int n, const Budget& budget) {
  require_n(n);
  const std::uint64_t vectors = checked_power(field.q(), static_cast<std::uint64_t>(n));
  budget.require_matrices(to_u64(gl_order(n, field.q())), "enumerate_gl");

  auto decode = [&](std::uint64_t index) {
    std::vector<Fq> v(n);
    for (int i = n - 1; i >= 0; --i) {
      v[i] = Fq(static_cast<std::uint32_t>(index % field.q()));
      index /= field.q();
    }
    return v;
  };
  auto encode = [&](const std::vector<Fq>& v) {
    std::uint64_t index = 0;
    for (Fq x : v) index = index * field.q() + x.bits;
    return index;
  };

  std::vector<Matrix> out;
  std::vector<std::uint64_t> rows(n);
  // Each level extends the span of the rows already chosen.
  std::function<void(int, const std::vector<std::uint64_t>&)> choose =
      [&](int row, const std::vector<std::uint64_t>& span) {
        if (row == n) {
          Matrix m(n);
          for (int i = 0; i < n; ++i) {
            const auto v = decode(rows[i]);
            for (int j = 0; j < n; ++j) m(i, j) = v[j];
          }
          out.push_back(std::move(m));
          return;
        }
        std::vector<bool> in_span(vectors, false);
        for (std::uint64_t s : span) in_span[s] = true;
        for (std::uint64_t candidate = 0; candidate < vectors; ++candidate) {
          if (in_span[candidate]) continue;
          rows[row] = candidate;
          const auto v = decode(candidate);
          std::vector<std::uint64_t> next;
          next.reserve(span.size() * field.q());
          for (std::uint64_t s : span) {
            const auto base = decode(s);
            for (Fq c : field.elements()) {
              std::vector<Fq> sum(n);
              for (int j = 0; j < n; ++j) sum[j] = base[j] + field.mul(c, v[j]);
              next.push_back(encode(sum));
            }
          }
          choose(row + 1, next);
        }
      };
  choose(0, {0});
  return out;
}

std::vector<Matrix> enumerate_symmetric(const Field& field, int n, const Budget& budget) {
  require_n(n);
  const auto free_entries = static_cast<std::uint64_t>(n) * (n + 1) / 2;
  const std::uint64_t count = checked_power(field.q(), free_entries);
  budget.require_matrices(count, "enumerate_symmetric");
  std::vector<Matrix> out;
  out.reserve(count);
  for (std::uint64_t index = 0; index < count; ++index) {
    Matrix m(n);
    std::uint64_t rest = index;
    for (int i = n - 1; i >= 0; --i) {
      for (int j = n - 1; j >= i; --j) {
        const Fq entry(static_cast<std::uint32_t>(rest % field.q()));
        rest /= field.q();
        m(i, j) = entry;
        m(j, i) = entry;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

Matrix parabolic_element(const Field& field, const Matrix& a, const Matrix& b) {
  const int n = a.dim();
  const Matrix ab = multiply(field, a, b);
  const Matrix a_inv_t = transpose(inverse(field, a));
  Matrix out(2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = a(i, j);
      out(i, n + j) = ab(i, j);
      out(n + i, n + j) = a_inv_t(i, j);
    }
  }
  return out;
}

std::vector<Matrix> enumerate_parabolic(const Field& field, int n, const Budget& budget) {
  require_n(n);
  const Int order = ipow(Int(field.q()), static_cast<unsigned long>(n * (n + 1) / 2)) * gl_order(n, field.q());
  budget.require_matrices(to_u64(order), "enumerate_parabolic");
  const auto gl = enumerate_gl(field, n, budget);
  const auto symmetric = enumerate_symmetric(field, n, budget);
  std::vector<Matrix> out;
  out.reserve(gl.size() * symmetric.size());
  for (const Matrix& a : gl) {
    for (const Matrix& b : symmetric) out.push_back(parabolic_element(field, a, b));
  }
  return out;
}

std::vector<Matrix> stabilizer_subgroup(const Field& field, int n, int r, const Budget& budget) {
  require_r(n, r);
  const Matrix sigma = make_sigma(n, r);
  std::vector<Matrix> out;
  for (const Matrix& w : enumerate_parabolic(field, n, budget)) {
    // sigma_r is an involution, so sigma_r^{-1} = sigma_r.
    if (in_parabolic(multiply(field, multiply(field, sigma, w), sigma))) out.push_back(w);
  }
  return out;
}

std::vector<Matrix> transversal(const Field& field, int n, int r, const Budget& budget) {
  require_r(n, r);
  const auto parabolic = enumerate_parabolic(field, n, budget);
  const Matrix sigma = make_sigma(n, r);
  std::vector<Matrix> stabilizer;
  for (const Matrix& w : parabolic) {
    if (in_parabolic(multiply(field, multiply(field, sigma, w), sigma))) stabilizer.push_back(w);
  }

  // Walk P in order; each unmet element opens a new coset A_r w, whose
  // members are then marked.
  std::unordered_set<std::uint64_t> covered;
  covered.reserve(parabolic.size());
  std::vector<Matrix> reps;
  for (const Matrix& w : parabolic) {
    if (covered.contains(packed_key(field, w))) continue;
    reps.push_back(w);
    for (const Matrix& a : stabilizer) {
      if (!covered.insert(packed_key(field, multiply(field, a, w))).second) {
        throw InternalInconsistency("right cosets of A_r overlap");
      }
    }
  }
  return reps;
}

Int FqHistogram::total() const {
  Int sum = 0;
  for (const Int& c : counts) sum += c;
  return sum;
}

void for_each_double_coset_element(const Field& field, int n, int r,
                                   const std::function<void(const Matrix&)>& visit, const Budget& budget,
                                   bool check_duplicates) {
  require_r(n, r);
  const SizeReport sizes = predicted_sizes(n, field.q());
  const std::uint64_t expected = to_u64(sizes.double_coset_sizes[r]);
  budget.require_matrices(expected, "double coset enumeration");
  budget.require_iterations(expected, "double coset enumeration");

  const auto parabolic = enumerate_parabolic(field, n, budget);
  const Matrix sigma = make_sigma(n, r);
  std::vector<Matrix> shifted;
  for (const Matrix& t : transversal(field, n, r, budget)) shifted.push_back(multiply(field, sigma, t));

  std::unordered_set<std::uint64_t> seen;
  if (check_duplicates) seen.reserve(expected);
  for (const Matrix& p : parabolic) {
    for (const Matrix& st : shifted) {
      const Matrix w = multiply(field, p, st);
      if (check_duplicates && !seen.insert(packed_key(field, w)).second) {
        throw InternalInconsistency("double coset enumeration produced a repeated element");
      }
      visit(w);
    }
  }
}

DoubleCosetTraces enumerate_double_coset(const Field& field, int n, int r, const Budget& budget,
                                         bool keep_sequence) {
  DoubleCosetTraces out;
  out.n = n;
  out.r = r;
  std::vector<std::uint64_t> counts(field.q(), 0);
  std::uint64_t size = 0;
  for_each_double_coset_element(
      field, n, r,
      [&](const Matrix& w) {
        const Fq t = matrix_trace(w);
        ++counts[t.bits];
        ++size;
        if (keep_sequence) out.sequence.push_back(t);
      },
      budget);
  out.size = static_cast<unsigned long>(size);
  out.histogram.counts.reserve(counts.size());
  for (std::uint64_t c : counts) out.histogram.counts.emplace_back(static_cast<unsigned long>(c));
  return out;
}

FqHistogram predicted_family_histogram(const Field& field, Family family, int n) {
  const FamilyConstants k = family_constants(family, n, field.q());
  const Int q = field.q();
  FqHistogram out;
  out.counts.resize(field.q());
  for (Fq beta : field.elements()) {
    Int factor;
    if (family == Family::Minus) {
      if (beta.is_zero()) {
        factor = 1;
      } else {
        factor = field.trace(field.inv(beta)) == 0 ? Int(q + 1) : Int(1 - q);
      }
    } else {
      if (beta.is_zero()) {
        factor = q * q * q - q * q - 1;
      } else {
        factor = q * kloosterman(field, field.inv(beta)) - q * q - 1;
      }
    }
    const Rational value = ratio(k.a * k.b, q) + ratio(k.a * factor, q);
    out.counts[beta.bits] = require_integer(value, "predicted trace count");
  }
  return out;
}

FqHistogram predicted_trace_histogram(const Field& field, int n, int r) {
  require_r(n, r);
  if (n % 2 == 1 && r == n - 1) return predicted_family_histogram(field, Family::Minus, n);
  if (n % 2 == 0 && r == n - 2) return predicted_family_histogram(field, Family::Plus, n);
  throw Unsupported("predicted trace histogram needs r = n-1 (n odd) or r = n-2 (n even)");
}

FqHistogram trace_histogram(const Field& field, int n, int r, Mode mode, const Budget& budget) {
  if (mode == Mode::Predicted) return predicted_trace_histogram(field, n, r);
  return enumerate_double_coset(field, n, r, budget).histogram;
}

Int character_sum_from_histogram(const Field& field, const FqHistogram& histogram, Fq a) {
  Int sum = 0;
  for (Fq beta : field.elements()) sum += field.lambda(field.mul(a, beta)) * histogram.at(beta);
  return sum;
}

Int predicted_dc_character_sum(const Field& field, int n, int r, Fq a) {
  require_r(n, r);
  if (a.is_zero()) throw InvalidArgument("character parameter a must be nonzero");
  if (r % 2 == 1) return 0;
  const long q = field.q();
  const auto ur = static_cast<unsigned long>(r);
  const auto un = static_cast<unsigned long>(n);
  Int product = 1;
  for (int j = 1; j <= r / 2; ++j) product *= ipow(q, static_cast<unsigned long>(2 * j - 1)) - 1;
  // psi(x) = lambda(a x); K_GL(n-r)(psi; 1).
  const Int gl = gl_kloosterman(field, n - r, field.one(), GlMethod::Recursive, a);
  return ipow(q, un * (un + 1) / 2) * ipow(q, ur * un - ur * ur / 4) * q_binomial(n, r, q) * product * gl;
}

Int family_character_sum(const Field& field, Family family, int n, Fq a) {
  if (a.is_zero()) throw InvalidArgument("character parameter a must be nonzero");
  const FamilyConstants k = family_constants(family, n, field.q());
  const Int kl = kloosterman(field, a);
  if (family == Family::Minus) return k.a * kl;
  const Int q = field.q();
  return k.a * (kl * kl + q * q - q);
}

Int dc_character_sum(const Field& field, int n, int r, Fq a, Mode mode, const Budget& budget) {
  if (a.is_zero()) throw InvalidArgument("character parameter a must be nonzero");
  if (mode == Mode::Predicted) return predicted_dc_character_sum(field, n, r, a);
  return character_sum_from_histogram(field, enumerate_double_coset(field, n, r, budget).histogram, a);
}

Int symplectic_order(int n, long q) {
  const auto un = static_cast<unsigned long>(n);
  Int out = ipow(q, un * un);
  for (int j = 1; j <= n; ++j) out *= ipow(q, static_cast<unsigned long>(2 * j)) - 1;
  return out;
}

Int brute_symplectic_order(const Field& field, int n, const Budget& budget) {
  require_n(n);
  const int d = 2 * n;
  const auto cells = static_cast<std::uint64_t>(d) * d;
  const std::uint64_t total = checked_power(field.q(), cells);
  budget.require_iterations(total, "brute symplectic filter");
  std::uint64_t count = 0;
  Matrix w(d);
  for (std::uint64_t index = 0; index < total; ++index) {
    std::uint64_t rest = index;
    for (int i = d - 1; i >= 0; --i) {
      for (int j = d - 1; j >= 0; --j) {
        w(i, j) = Fq(static_cast<std::uint32_t>(rest % field.q()));
        rest /= field.q();
      }
    }
    if (is_symplectic(field, w)) ++count;
  }
  return static_cast<unsigned long>(count);
}

Int alternating_count_formula(int size, long q, bool printed) {
  if (size < 0) throw InvalidArgument("matrix size must be >= 0");
  if (size == 0) return 1;
  if (size % 2 == 1) return 0;
  const int half = size / 2;
  Int out = ipow(q, static_cast<unsigned long>(half * (half - 1)));
  for (int j = 1; j <= half; ++j) {
    const Int power = ipow(q, static_cast<unsigned long>(2 * j - 1));
    out *= printed ? power : power - 1;
  }
  return out;
}

Int count_alternating(const Field& field, int size, const Budget& budget) {
  if (size < 1) throw InvalidArgument("matrix size must be positive");
  const auto free_entries = static_cast<std::uint64_t>(size) * (size - 1) / 2;
  const std::uint64_t total = checked_power(field.q(), free_entries);
  budget.require_iterations(total, "count_alternating");
  std::uint64_t count = 0;
  for (std::uint64_t index = 0; index < total; ++index) {
    Matrix m(size);
    std::uint64_t rest = index;
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) {
        const Fq entry(static_cast<std::uint32_t>(rest % field.q()));
        rest /= field.q();
        m(i, j) = entry;
        m(j, i) = entry;
      }
    }
    if (rank(field, m) == size) ++count;
  }
  return static_cast<unsigned long>(count);
}

SizeReport predicted_sizes(int n, long q) {
  require_n(n);
  SizeReport out;
  out.n = n;
  out.q = q;
  const auto un = static_cast<unsigned long>(n);
  Int q_factorials = 1;  // prod_{j=1}^{n} (q^j - 1)
  for (int j = 1; j <= n; ++j) q_factorials *= ipow(q, static_cast<unsigned long>(j)) - 1;

  for (int k = 0; k <= n; ++k) out.gl_orders.push_back(gl_order(k, q));
  const Int p_power = ipow(q, un * (un + 1) / 2);
  out.parabolic_order = p_power * out.gl_orders[n];

  out.stabilizer_index_holds = true;
  for (int r = 0; r <= n; ++r) {
    const auto ur = static_cast<unsigned long>(r);
    out.q_binomials.push_back(q_binomial(n, r, q));
    const long twice_exponent = static_cast<long>(n) * (n + 1) + static_cast<long>(r) * (2 * n - 3 * r - 1);
    out.stabilizer_orders.push_back(out.gl_orders[r] * out.gl_orders[n - r] *
                                    ipow(q, static_cast<unsigned long>(twice_exponent / 2)));
    out.transversal_sizes.push_back(ipow(q, ur * (ur + 1) / 2) * out.q_binomials[r]);
    out.double_coset_sizes.push_back(ipow(q, un * un) * out.q_binomials[r] * ipow(q, ur * (ur - 1) / 2 + ur) *
                                     q_factorials);
    out.alternating_counts.push_back(alternating_count_formula(r, q));
    out.alternating_counts_printed.push_back(alternating_count_formula(r, q, true));
    // |A_r| |A_r \ P| = |P| and |P|^2 / |A_r| = |P sigma_r P|.
    if (out.stabilizer_orders[r] * out.transversal_sizes[r] != out.parabolic_order ||
        out.parabolic_order * out.transversal_sizes[r] != out.double_coset_sizes[r]) {
      out.stabilizer_index_holds = false;
    }
  }
  if (n % 2 == 1) {
    out.dc_minus = ipow(q, un * (3 * un - 1) / 2) * q_binomial(n, 1, q) * q_factorials;
  } else {
    out.dc_plus = ipow(q, (3 * un * un - 3 * un + 2) / 2) * q_binomial(n, 2, q) * q_factorials;
  }
  out.symplectic_order = symplectic_order(n, q);

  Int coset_total = 0;
  for (const Int& s : out.double_coset_sizes) coset_total += s;
  out.partition_holds = coset_total == out.symplectic_order;

  // q-binomial theorem at x = -q: sum_r [n r] (-1)^r q^{C(r,2)} (-q)^r = prod (1 + q^{i+1}).
  Int lhs = 0;
  for (int r = 0; r <= n; ++r) {
    const auto ur = static_cast<unsigned long>(r);
    lhs += out.q_binomials[r] * ipow(q, ur * (ur - 1) / 2) * ipow(q, ur);
  }
  Int rhs = 1;
  for (int i = 0; i < n; ++i) rhs *= 1 + ipow(q, static_cast<unsigned long>(i + 1));
  out.q_binomial_theorem_holds = lhs == rhs;
  return out;
}

}  // namespace kmoment
