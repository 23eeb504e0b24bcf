#include "kmoment/verification.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

#include "kmoment/char_sums.hpp"
#include "kmoment/codes.hpp"
#include "kmoment/family.hpp"
#include "kmoment/field.hpp"
#include "kmoment/moments.hpp"
#include "kmoment/symplectic.hpp"

namespace kmoment {

namespace {

std::string join(const std::vector<Int>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += values[i].get_str();
  }
  return out + "]";
}

std::string label(const char* prefix, int n, long q) {
  return std::string(prefix) + " n=" + std::to_string(n) + " q=" + std::to_string(q);
}

std::string code_label(Family family, int n, long q) {
  return std::string("(") + (family == Family::Minus ? "-" : "+") + "," + std::to_string(n) + "," +
         std::to_string(q) + ")";
}

// Double-coset trace statistics are shared by several criteria.
struct CosetStats {
  Int size;
  Int symplectic_members;
  FqHistogram histogram;
};

const CosetStats& coset_stats(const Field& field, int n, int r, const Budget& budget) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, CosetStats> cache;
  const auto key = std::make_tuple(field.r(), n, r);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  CosetStats stats;
  std::vector<std::uint64_t> counts(field.q(), 0);
  std::uint64_t size = 0;
  std::uint64_t symplectic = 0;
  for_each_double_coset_element(
      field, n, r,
      [&](const Matrix& w) {
        ++size;
        ++counts[matrix_trace(w).bits];
        if (is_symplectic(field, w)) ++symplectic;
      },
      budget);
  stats.size = static_cast<unsigned long>(size);
  stats.symplectic_members = static_cast<unsigned long>(symplectic);
  for (std::uint64_t c : counts) stats.histogram.counts.emplace_back(static_cast<unsigned long>(c));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(stats)).first->second;
}

int field_exponent(long q) {
  int r = 0;
  while ((1L << r) < q) ++r;
  return r;
}

struct GroupCase {
  int n;
  long q;
};

const std::vector<GroupCase>& group_cases() {
  static const std::vector<GroupCase> cases = {{1, 2}, {1, 4}, {1, 8}, {1, 16}, {2, 2}, {2, 4}, {3, 2}};
  return cases;
}

// ---------------------------------------------------------------------------

void carlitz(std::vector<Check>& checks, const Budget& budget) {
  for (int r = 1; r <= 6; ++r) {
    const Field field(r);
    std::vector<Int> expected;
    std::vector<Int> actual;
    for (Fq a : field.units()) {
      const Int k = kloosterman(field, a);
      expected.push_back(k * k - field.q());
      actual.push_back(kloosterman_m(field, 2, a, field.one(), budget));
    }
    checks.push_back(make_check("K_2(a) = K(a)^2 - q, q=" + std::to_string(field.q()), expected, actual));
  }
}

void frobenius_weil(std::vector<Check>& checks, const Budget&) {
  // For a twisted character the substitution x -> x^2 also moves the twist:
  // K(lambda_c; a^2) = K(lambda_{c^(1/2)}; a). Invariance in a alone holds for c = 1.
  for (int r = 1; r <= 6; ++r) {
    const Field field(r);
    std::vector<Int> expected;
    std::vector<Int> actual;
    long conjugate_mismatches = 0;
    long weil_violations = 0;
    for (Fq c : field.units()) {
      for (Fq a : field.units()) {
        const Int k = kloosterman(field, a, c);
        if (k * k > 4 * static_cast<long>(field.q())) ++weil_violations;
        Fq power = a;
        Fq twist = c;
        for (int s = 0; s <= r; ++s) {
          if (c == field.one()) {
            expected.push_back(k);
            actual.push_back(kloosterman(field, power, c));
          }
          if (kloosterman(field, power, twist) != k) ++conjugate_mismatches;
          power = field.frobenius(power);
          twist = field.frobenius(twist);
        }
      }
    }
    const std::string q = std::to_string(field.q());
    checks.push_back(make_check("K(lambda; a^(2^s)) = K(lambda; a), q=" + q, expected, actual));
    checks.push_back(make_check("K(lambda_(c^(2^s)); a^(2^s)) = K(lambda_c; a) mismatches, q=" + q, Int(0),
                                Int(conjugate_mismatches)));
    checks.push_back(make_check("Weil bound violations, q=" + q, Int(0), Int(weil_violations)));
  }
}

void gl_kloosterman_forms(std::vector<Check>& checks, const Budget&) {
  for (int r = 1; r <= 4; ++r) {
    const Field field(r);
    for (int t = 0; t <= 4; ++t) {
      std::vector<Int> recursive;
      std::vector<Int> closed;
      for (Fq a : field.units()) {
        recursive.push_back(gl_kloosterman(field, t, a, GlMethod::Recursive));
        closed.push_back(gl_kloosterman(field, t, a, GlMethod::Closed));
      }
      checks.push_back(make_check("K_GL(" + std::to_string(t) + ") recursive = closed, q=" + std::to_string(field.q()),
                                  recursive, closed));
    }
  }
}

void twisted_and_artin_schreier(std::vector<Check>& checks, const Budget& budget) {
  for (int r = 1; r <= 5; ++r) {
    const Field field(r);
    for (int m = 1; m <= 2; ++m) {
      std::vector<Int> predicted;
      std::vector<Int> measured;
      for (Fq beta : field.elements()) {
        const IdentityValue v = twisted_sum(field, m, beta, budget);
        predicted.push_back(v.predicted);
        measured.push_back(v.measured);
      }
      checks.push_back(make_check("twisted sum m=" + std::to_string(m) + ", q=" + std::to_string(field.q()), predicted,
                                  measured));
    }
  }
  for (int r = 1; r <= 6; ++r) {
    const Field field(r);
    const auto image = field.artin_schreier_image();
    std::vector<Int> predicted_a, measured_a, predicted_b, measured_b;
    for (Fq beta : field.units()) {
      const IdentityValue va = artin_schreier_char_sum(field, beta, ArtinSchreierVariant::A);
      predicted_a.push_back(va.predicted);
      measured_a.push_back(va.measured);
      for (Fq b : field.elements()) {
        if (std::binary_search(image.begin(), image.end(), b)) continue;
        const IdentityValue vb = artin_schreier_char_sum(field, beta, ArtinSchreierVariant::B, b);
        predicted_b.push_back(vb.predicted);
        measured_b.push_back(vb.measured);
      }
    }
    checks.push_back(make_check("Artin-Schreier sum (a), q=" + std::to_string(field.q()), predicted_a, measured_a));
    checks.push_back(make_check("Artin-Schreier sum (b), q=" + std::to_string(field.q()), predicted_b, measured_b));
  }
}

void group_cardinalities(std::vector<Check>& checks, const Budget& budget) {
  checks.push_back(make_check("|Sp(4,2)| by brute filter", Int(720), brute_symplectic_order(Field(1), 2, budget)));
  for (const auto& [n, q] : group_cases()) {
    const Field field(field_exponent(q));
    const SizeReport sizes = predicted_sizes(n, q);
    checks.push_back(make_check(label("|P(2n,q)|", n, q), sizes.parabolic_order,
                                Int(static_cast<unsigned long>(enumerate_parabolic(field, n, budget).size()))));
    Int total = 0;
    for (int r = 0; r <= n; ++r) {
      const std::string suffix = " r=" + std::to_string(r);
      checks.push_back(make_check(label("|A_r|", n, q) + suffix, sizes.stabilizer_orders[r],
                                  Int(static_cast<unsigned long>(stabilizer_subgroup(field, n, r, budget).size()))));
      checks.push_back(make_check(label("|A_r\\P|", n, q) + suffix, sizes.transversal_sizes[r],
                                  Int(static_cast<unsigned long>(transversal(field, n, r, budget).size()))));
      const CosetStats& stats = coset_stats(field, n, r, budget);
      checks.push_back(make_check(label("|P sigma_r P|", n, q) + suffix, sizes.double_coset_sizes[r], stats.size));
      checks.push_back(make_check(label("symplectic members of P sigma_r P", n, q) + suffix, stats.size,
                                  stats.symplectic_members));
      total += stats.size;
    }
    checks.push_back(make_check(label("sum_r |P sigma_r P| = |Sp(2n,q)|", n, q), sizes.symplectic_order, total));
    if (sizes.dc_minus) {
      checks.push_back(make_check(label("|DC^-|", n, q), *sizes.dc_minus, coset_stats(field, n, n - 1, budget).size));
    }
    if (sizes.dc_plus) {
      checks.push_back(make_check(label("|DC^+|", n, q), *sizes.dc_plus, coset_stats(field, n, n - 2, budget).size));
    }
    checks.push_back(make_check(label("q-binomial theorem at x=-q", n, q), "true",
                                sizes.q_binomial_theorem_holds ? "true" : "false"));
  }
}

struct FamilyCase {
  Family family;
  int n;
  long q;
};

const std::vector<FamilyCase>& histogram_cases() {
  static const std::vector<FamilyCase> cases = {{Family::Minus, 1, 2},  {Family::Minus, 1, 4}, {Family::Minus, 1, 8},
                                                {Family::Minus, 1, 16}, {Family::Minus, 3, 2}, {Family::Plus, 2, 2},
                                                {Family::Plus, 2, 4}};
  return cases;
}

void trace_histograms(std::vector<Check>& checks, const Budget& budget) {
  for (const auto& [family, n, q] : histogram_cases()) {
    const Field field(field_exponent(q));
    const FqHistogram& enumerated = coset_stats(field, n, coset_index(family, n), budget).histogram;
    checks.push_back(make_check("N(beta) " + code_label(family, n, q),
                                predicted_family_histogram(field, family, n).counts, enumerated.counts));
    if (family == Family::Minus && n == 1) {
      std::vector<Int> literal;
      for (Fq beta : field.elements()) {
        if (beta.is_zero()) {
          literal.push_back(q);
        } else {
          literal.push_back(field.trace(field.inv(beta)) == 0 ? Int(2 * q) : Int(0));
        }
      }
      checks.push_back(make_check("N(beta) case list " + code_label(family, n, q), literal, enumerated.counts));
    }
    if (family == Family::Plus && n == 2) {
      std::vector<Int> literal;
      for (Fq beta : field.units()) {
        literal.push_back(ipow(q, 4) * (q * q - 2 * q - 1 + kloosterman(field, field.inv(beta))));
      }
      std::vector<Int> nonzero(enumerated.counts.begin() + 1, enumerated.counts.end());
      checks.push_back(make_check("N(beta) = q^4 (q^2-2q-1+K) " + code_label(family, n, q), literal, nonzero));
      checks.push_back(make_check("N(0) = q^4 (2q^2-2q-1) " + code_label(family, n, q),
                                  ipow(q, 4) * (2 * q * q - 2 * q - 1), enumerated.counts[0]));
    }
  }
  const Field f2(1);
  const FqHistogram& h = coset_stats(f2, 2, 0, budget).histogram;
  checks.push_back(make_check("N_{DC+(2,2)}(0)", Int(48), h.counts[0]));
  checks.push_back(make_check("N_{DC+(2,2)}(1)", Int(0), h.counts[1]));
}

void exponential_sums(std::vector<Check>& checks, const Budget& budget) {
  for (const auto& [n, q] : group_cases()) {
    const Field field(field_exponent(q));
    const SizeReport sizes = predicted_sizes(n, q);
    std::vector<Int> full_enumerated(field.q(), Int(0));
    for (int r = 0; r <= n; ++r) {
      const CosetStats& stats = coset_stats(field, n, r, budget);
      std::vector<Int> predicted;
      std::vector<Int> enumerated;
      for (Fq a : field.units()) {
        predicted.push_back(predicted_dc_character_sum(field, n, r, a));
        enumerated.push_back(character_sum_from_histogram(field, stats.histogram, a));
        full_enumerated[a.bits] += enumerated.back();
      }
      checks.push_back(make_check(label("double-coset sum", n, q) + " r=" + std::to_string(r), predicted, enumerated));

      // q N(beta) = |P sigma_r P| + sum_a lambda(a beta) S(a).
      std::vector<Int> lhs;
      std::vector<Int> rhs;
      for (Fq beta : field.elements()) {
        lhs.push_back(Int(q) * stats.histogram.at(beta));
        Int total = stats.size;
        for (Fq a : field.units()) total += field.lambda(field.mul(a, beta)) * predicted[a.bits - 1];
        rhs.push_back(total);
      }
      checks.push_back(make_check(label("q N(beta) inversion", n, q) + " r=" + std::to_string(r), rhs, lhs));
    }
    const Family family = n % 2 == 1 ? Family::Minus : Family::Plus;
    const CosetStats& family_stats = coset_stats(field, n, coset_index(family, n), budget);
    std::vector<Int> family_predicted;
    std::vector<Int> family_enumerated;
    for (Fq a : field.units()) {
      family_predicted.push_back(family_character_sum(field, family, n, a));
      family_enumerated.push_back(character_sum_from_histogram(field, family_stats.histogram, a));
    }
    checks.push_back(make_check("family sum " + code_label(family, n, q), family_predicted, family_enumerated));

    if (n <= 2) {
      // Gauss sum for Sp(2n,q) from the cosets, q^{C(n+1,2)} |A_r\P| q^{r(n-r)} a_r K_GL(n-r)(psi;1).
      std::vector<Int> gauss_predicted;
      std::vector<Int> gauss_enumerated;
      for (Fq a : field.units()) {
        Int total = 0;
        for (int r = 0; r <= n; ++r) {
          total += ipow(q, static_cast<unsigned long>(n * (n + 1) / 2)) * sizes.transversal_sizes[r] *
                   ipow(q, static_cast<unsigned long>(r * (n - r))) * sizes.alternating_counts[r] *
                   gl_kloosterman(field, n - r, field.one(), GlMethod::Closed, a);
        }
        gauss_predicted.push_back(total);
        gauss_enumerated.push_back(full_enumerated[a.bits]);
      }
      checks.push_back(make_check(label("Gauss sum over Sp(2n,q)", n, q), gauss_predicted, gauss_enumerated));
    }
  }
}

const std::vector<FamilyCase>& code_cases() {
  static const std::vector<FamilyCase> cases = {{Family::Minus, 1, 8}, {Family::Minus, 3, 2}, {Family::Plus, 2, 4},
                                                {Family::Minus, 1, 2}, {Family::Minus, 1, 4}, {Family::Plus, 2, 2}};
  return cases;
}

void code_duality(std::vector<Check>& checks, const Budget& budget) {
  for (const auto& [family, n, q] : code_cases()) {
    const Field field(field_exponent(q));
    const CodeInstance code = build_code(field, family, n, {.source = BuildOptions::Source::Enumerated, .budget = budget});
    const DelsarteReport report = verify_delsarte(code, 1'000'000);
    const std::string tag = code_label(family, n, q);
    checks.push_back(make_check("dual dimension " + tag, Int(expected_dual_dimension(family, n, field)),
                                Int(code.dual_dimension)));
    checks.push_back(make_check("parity-row rank " + tag, Int(report.expected_rank), Int(report.rank)));
    checks.push_back(make_check("parity row space = {c(a)} " + tag, "true", report.row_space_matches ? "true" : "false"));
    std::vector<Int> predicted;
    std::vector<Int> measured;
    for (Fq a : field.elements()) {
      predicted.push_back(dual_weight(code, a, Mode::Predicted));
      measured.push_back(dual_weight(code, a, Mode::Enumerated));
    }
    checks.push_back(make_check("dual weights " + tag, predicted, measured));
  }
}

void weight_distributions(std::vector<Check>& checks, const Budget& budget) {
  for (const auto& [family, n, q] : {FamilyCase{Family::Minus, 1, 8}, FamilyCase{Family::Plus, 2, 4}}) {
    const Field field(field_exponent(q));
    const CodeInstance code = build_code(field, family, n, {.budget = budget});
    const std::string tag = code_label(family, n, q);
    const auto direct = weight_distribution(code, 10, WeightMethod::Direct, budget).counts;
    checks.push_back(make_check("direct = closed form, j<=10 " + tag, direct,
                                weight_distribution(code, 10, WeightMethod::ClosedForm, budget).counts));
    checks.push_back(make_check("direct = MacWilliams, j<=10 " + tag, direct,
                                weight_distribution(code, 10, WeightMethod::MacWilliams, budget).counts));
  }
  const Field f8(3);
  const CodeInstance code = build_code(f8, Family::Minus, 1, {.budget = budget});
  const std::size_t length = code.length();
  const auto full = weight_distribution(code, length, WeightMethod::MacWilliams, budget).counts;
  std::vector<Int> mirrored(full.rbegin(), full.rend());
  checks.push_back(make_check("C_j = C_{N-j} (-,1,8)", full, mirrored));
  checks.push_back(make_check("full direct = full MacWilliams (-,1,8)",
                              weight_distribution(code, length, WeightMethod::Direct, budget).counts, full));
  checks.push_back(make_check("sum_j C_j = 2^{N-r} (-,1,8)", ipow(2L, length - 3),
                              std::accumulate(full.begin(), full.end(), Int(0))));
  checks.push_back(make_check("C_1 (-,1,8)", Int(8), full[1]));
  checks.push_back(make_check("C_2 (-,1,8)", Int(388), full[2]));
}

void recursions(std::vector<Check>& checks, const Budget& budget) {
  for (const auto& [n, q] : {GroupCase{1, 8}, GroupCase{1, 16}, GroupCase{3, 2}}) {
    const Field field(field_exponent(q));
    const CodeInstance code = build_code(field, Family::Minus, n, {.budget = budget});
    const RecursionInput input = make_recursion_input(code, 8);
    checks.push_back(make_check(code_label(Family::Minus, n, q) + " MK^h, h=0..8",
                                brute_moments(field, 1, 8, budget).values,
                                recursive_moments(input, MomentKind::MkMinus).values));
    if (n == 1 && q == 8) {
      const RecursionStep step = recursion_step(input, MomentKind::MkMinus, 1, {Int(q - 1)});
      checks.push_back(make_check("MK^1 history term, q=8", Int(49), step.history));
      checks.push_back(make_check("MK^1 weight term, q=8", "-48", to_string(step.weight_term)));
    }
  }
  const Field f4(2);
  const CodeInstance plus = build_code(f4, Family::Plus, 2, {.budget = budget});
  const RecursionInput input = make_recursion_input(plus, 6);
  checks.push_back(make_check("(+,2,4) MK_2^h, h=0..6", brute_moments(f4, 2, 6, budget).values,
                              recursive_moments(input, MomentKind::Mk2Plus).values));
  std::vector<Int> even;
  const auto all = brute_moments(f4, 1, 12, budget).values;
  for (std::size_t h = 0; h < all.size(); h += 2) even.push_back(all[h]);
  checks.push_back(make_check("(+,2,4) MK^{2h}, h=0..6", even, recursive_moments(input, MomentKind::MkEvenPlus).values));
}

void value_range(std::vector<Check>& checks, const Budget&) {
  for (int r = 3; r <= 6; ++r) {
    const Field field(r);
    const long q = field.q();
    const IntHistogram hist = value_histogram(field);
    std::vector<Int> keys;
    for (const auto& [tau, count] : hist.counts) keys.push_back(Int(static_cast<long>(tau)));
    std::vector<Int> range;
    for (long tau = -2 * q; tau <= 2 * q; ++tau) {
      if (tau * tau < 4 * q && ((tau % 4) + 4) % 4 == 3) range.push_back(tau);
    }
    checks.push_back(make_check("range of K(lambda;a), q=" + std::to_string(q), range, keys));
    checks.push_back(make_check("histogram total, q=" + std::to_string(q), Int(q - 1),
                                Int(static_cast<unsigned long>(hist.total()))));
    if (q == 8) {
      std::vector<Int> counts;
      for (const auto& [tau, count] : hist.counts) counts.push_back(Int(static_cast<unsigned long>(count)));
      checks.push_back(make_check("histogram q=8 keys", std::vector<Int>{-5, -1, 3}, keys));
      checks.push_back(make_check("histogram q=8 counts", std::vector<Int>{1, 3, 3}, counts));
    }
  }
}

void pless_engine(std::vector<Check>& checks, const Budget& budget) {
  for (const auto& [family, n, q] : {FamilyCase{Family::Minus, 1, 4}, FamilyCase{Family::Plus, 2, 2}}) {
    const Field field(field_exponent(q));
    const CodeInstance code = build_code(field, family, n, {.budget = budget});
    const auto full = weight_distribution(code, code.length(), WeightMethod::Direct, budget);
    const auto dual = dual_distribution(code);
    const int k = static_cast<int>(code.length()) - code.dual_dimension;
    for (int h = 0; h <= 4; ++h) {
      const PlessSides sides = pless_sides(full, dual, k, h);
      checks.push_back(make_check("Pless h=" + std::to_string(h) + " " + code_label(family, n, q),
                                  to_string(sides.rhs), to_string(Rational(sides.lhs))));
    }
  }
}

using Runner = void (*)(std::vector<Check>&, const Budget&);

struct Entry {
  Criterion criterion;
  Runner run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{1, "carlitz", "Carlitz identity K_2 = K^2 - q", 5}, carlitz},
      {{2, "frobenius-weil", "Frobenius invariance and Weil bound", 5}, frobenius_weil},
      {{3, "gl-kloosterman", "GL Kloosterman recursion = closed form", 10}, gl_kloosterman_forms},
      {{4, "twisted-sums", "Twisted sums and Artin-Schreier sums", 30}, twisted_and_artin_schreier},
      {{5, "group-sizes", "Parabolic, transversal, double-coset and Sp cardinalities", 120}, group_cardinalities},
      {{6, "trace-histograms", "Trace histograms of DC-/+", 120}, trace_histograms},
      {{7, "exponential-sums", "Double-coset exponential sums and the Sp Gauss sum", 120}, exponential_sums},
      {{8, "code-duality", "Dual codes: dimension, Delsarte rows, dual weights", 60}, code_duality},
      {{9, "weight-distributions", "Weight distributions by three methods", 60}, weight_distributions},
      {{10, "moment-recursions", "Recursive power moments vs brute force", 60}, recursions},
      {{11, "value-range", "Range of the Kloosterman sum", 5}, value_range},
      {{12, "pless", "Pless power moment identity", 60}, pless_engine},
  };
  return table;
}

}  // namespace

Check make_check(std::string name, const Int& expected, const Int& actual) {
  return {std::move(name), expected.get_str(), actual.get_str(), expected == actual};
}

Check make_check(std::string name, const std::vector<Int>& expected, const std::vector<Int>& actual) {
  return {std::move(name), join(expected), join(actual), expected == actual};
}

Check make_check(std::string name, const std::string& expected, const std::string& actual) {
  return {std::move(name), expected, actual, expected == actual};
}

bool CriterionResult::pass() const {
  return error.empty() && within_time() && !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = [] {
    std::vector<Criterion> out;
    for (const Entry& e : entries()) out.push_back(e.criterion);
    return out;
  }();
  return list;
}

std::vector<int> select_criteria(const std::string& suite) {
  std::vector<int> ids;
  if (suite == "all") {
    for (const Criterion& c : criteria()) ids.push_back(c.id);
    return ids;
  }
  for (const Criterion& c : criteria()) {
    if (suite == c.key || suite == std::to_string(c.id)) return {c.id};
  }
  throw InvalidArgument("unknown suite '" + suite + "'");
}

CriterionResult run_criterion(int id, const Budget& budget) {
  for (const Entry& e : entries()) {
    if (e.criterion.id != id) continue;
    CriterionResult result;
    result.criterion = e.criterion;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(result.checks, budget);
    } catch (const BudgetExceeded&) {
      throw;
    } catch (const std::exception& ex) {
      result.error = ex.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }
  throw InvalidArgument("unknown criterion " + std::to_string(id));
}

}  // namespace kmoment
