#include "kmoment/field.hpp"

#include <algorithm>
#include <bit>

#include "kmoment/errors.hpp"

namespace kmoment {

namespace {

// Low-weight irreducibles, indexed by r.
constexpr std::uint32_t kModulusTable[kMaxFieldExponent + 1] = {
    0,
    0b11,              // x + 1
    0b111,             // x^2 + x + 1
    0b1011,            // x^3 + x + 1
    0b10011,           // x^4 + x + 1
    0b100101,          // x^5 + x^2 + 1
    0b1000011,         // x^6 + x + 1
    0b10000011,        // x^7 + x + 1
    0b100011011,       // x^8 + x^4 + x^3 + x + 1
    0b1000000011,      // x^9 + x + 1
    0b10000001001,     // x^10 + x^3 + 1
    0b100000000101,    // x^11 + x^2 + 1
    0b1000000001001,   // x^12 + x^3 + 1
};

}  // namespace

int poly_degree(std::uint32_t a) { return a == 0 ? -1 : std::bit_width(a) - 1; }

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t modulus) {
  const int dm = poly_degree(modulus);
  for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) a ^= modulus << (d - dm);
  return a;
}

std::uint32_t poly_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus) {
  std::uint64_t product = 0;
  for (int i = 0; b >> i; ++i) {
    if ((b >> i) & 1U) product ^= static_cast<std::uint64_t>(a) << i;
  }
  const int dm = poly_degree(modulus);
  for (int d = std::bit_width(product) - 1; d >= dm; d = std::bit_width(product) - 1) {
    product ^= static_cast<std::uint64_t>(modulus) << (d - dm);
  }
  return static_cast<std::uint32_t>(product);
}

bool is_irreducible(std::uint32_t poly) {
  const int degree = poly_degree(poly);
  if (degree < 1) return false;
  // Trial division by every polynomial of degree 1 .. degree-1.
  for (std::uint32_t divisor = 2; poly_degree(divisor) < degree; ++divisor) {
    if (poly_mod(poly, divisor) == 0) return false;
  }
  return true;
}

std::uint32_t default_modulus(int r) {
  if (r < 1 || r > kMaxFieldExponent) {
    throw UnsupportedField("field exponent r=" + std::to_string(r) + " outside 1.." +
                           std::to_string(kMaxFieldExponent));
  }
  return kModulusTable[r];
}

Field::Field(int r) : Field(r, default_modulus(r)) {}

Field::Field(int r, std::uint32_t modulus) : r_(r), modulus_(modulus) {
  if (r < 1 || r > kMaxFieldExponent) {
    throw UnsupportedField("field exponent r=" + std::to_string(r) + " outside 1.." +
                           std::to_string(kMaxFieldExponent));
  }
  if (poly_degree(modulus) != r || !is_irreducible(modulus)) {
    throw UnsupportedField("modulus " + std::to_string(modulus) + " is not irreducible of degree " +
                           std::to_string(r));
  }
  q_ = 1U << r;
  build();
}

void Field::build() {
  auto tables = std::make_shared<Tables>();
  const std::uint32_t order = q_ - 1;

  // Smallest element (by encoding) of multiplicative order q-1.
  std::uint32_t generator = 0;
  for (std::uint32_t g = 1; g < q_ && generator == 0; ++g) {
    std::uint32_t x = 1;
    std::uint32_t k = 0;
    do {
      x = poly_mulmod(x, g, modulus_);
      ++k;
    } while (x != 1);
    if (k == order) generator = g;
  }

  tables->log.assign(q_, 0);
  tables->exp.assign(2 * static_cast<std::size_t>(order), Fq());
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k < order; ++k) {
    tables->exp[k] = Fq(x);
    tables->exp[k + order] = Fq(x);
    tables->log[x] = static_cast<std::uint16_t>(k);
    x = poly_mulmod(x, generator, modulus_);
  }

  tables->trace.assign(q_, 0);
  for (std::uint32_t v = 0; v < q_; ++v) {
    std::uint32_t term = v;
    std::uint32_t sum = 0;
    for (int i = 0; i < r_; ++i) {
      sum ^= term;
      term = poly_mulmod(term, term, modulus_);
    }
    if (sum > 1) throw InternalInconsistency("trace left F_2");
    tables->trace[v] = static_cast<std::uint8_t>(sum);
  }
  tables_ = std::move(tables);
}

std::string Field::modulus_string() const {
  std::string out;
  for (int i = r_; i >= 0; --i) {
    if (((modulus_ >> i) & 1U) == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += "1";
    } else if (i == 1) {
      out += "x";
    } else {
      out += "x^" + std::to_string(i);
    }
  }
  return out;
}

Fq Field::element(std::uint32_t index) const {
  if (index >= q_) throw InvalidArgument("element index " + std::to_string(index) + " >= q");
  return Fq(index);
}

std::vector<Fq> Field::elements() const {
  std::vector<Fq> out(q_);
  for (std::uint32_t v = 0; v < q_; ++v) out[v] = Fq(v);
  return out;
}

std::vector<Fq> Field::units() const {
  std::vector<Fq> out;
  out.reserve(q_ - 1);
  for (std::uint32_t v = 1; v < q_; ++v) out.emplace_back(v);
  return out;
}

Fq Field::inv(Fq x) const {
  if (x.is_zero()) throw InvalidArgument("division by zero in F_q");
  const auto& t = *tables_;
  const std::uint32_t order = q_ - 1;
  return t.exp[(order - t.log[x.bits]) % order];
}

Fq Field::pow(Fq x, std::uint64_t exponent) const {
  if (exponent == 0) return one();
  if (x.is_zero()) return zero();
  const auto& t = *tables_;
  const std::uint64_t order = q_ - 1;
  return t.exp[(t.log[x.bits] * (exponent % order)) % order];
}

std::vector<Fq> Field::artin_schreier_image() const {
  std::vector<bool> seen(q_, false);
  for (std::uint32_t v = 0; v < q_; ++v) {
    const Fq a(v);
    seen[(square(a) + a).bits] = true;
  }
  std::vector<Fq> out;
  for (std::uint32_t v = 0; v < q_; ++v) {
    if (seen[v]) out.emplace_back(v);
  }
  return out;
}

}  // namespace kmoment
