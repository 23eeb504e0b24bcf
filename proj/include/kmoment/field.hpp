#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace kmoment {

// Element of F_{2^r}: polynomial residue with coefficient i stored in bit i.
// The integer value of `bits` is the canonical enumeration order.
struct Fq {
  std::uint16_t bits = 0;

  constexpr Fq() = default;
  constexpr explicit Fq(std::uint32_t value) : bits(static_cast<std::uint16_t>(value)) {}

  constexpr bool is_zero() const { return bits == 0; }
  friend constexpr bool operator==(Fq, Fq) = default;
  friend constexpr auto operator<=>(Fq, Fq) = default;
};

constexpr Fq operator+(Fq x, Fq y) { return Fq(x.bits ^ y.bits); }

inline constexpr int kMaxFieldExponent = 12;

// Modulus for F_{2^r} from the built-in table (bit i = coefficient of x^i).
std::uint32_t default_modulus(int r);

// Exact arithmetic in F_{2^r}, 1 <= r <= 12. Immutable; copies share tables.
class Field {
 public:
  // Field with the table modulus for this r.
  explicit Field(int r);
  // Field with a caller-chosen modulus; it must be irreducible of degree r.
  Field(int r, std::uint32_t modulus);

  int r() const { return r_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t modulus() const { return modulus_; }
  std::string modulus_string() const;

  Fq zero() const { return Fq(0); }
  Fq one() const { return Fq(1); }
  Fq element(std::uint32_t index) const;
  // All q elements in canonical order.
  std::vector<Fq> elements() const;
  // The q-1 nonzero elements in canonical order.
  std::vector<Fq> units() const;

  Fq add(Fq x, Fq y) const { return x + y; }
  Fq mul(Fq x, Fq y) const {
    if (x.is_zero() || y.is_zero()) return Fq();
    const auto& t = *tables_;
    return t.exp[t.log[x.bits] + t.log[y.bits]];
  }
  Fq square(Fq x) const { return mul(x, x); }
  Fq inv(Fq x) const;
  Fq div(Fq x, Fq y) const { return mul(x, inv(y)); }
  Fq pow(Fq x, std::uint64_t exponent) const;
  Fq frobenius(Fq x) const { return square(x); }

  // Absolute trace to F_2, 0 or 1.
  int trace(Fq x) const { return tables_->trace[x.bits]; }
  // Canonical additive character (-1)^{tr(x)}.
  int lambda(Fq x) const { return trace(x) == 0 ? 1 : -1; }

  // {a^2 + a : a in F_q}, sorted by encoding.
  std::vector<Fq> artin_schreier_image() const;

  // A fixed generator of the multiplicative group.
  Fq primitive_element() const { return tables_->exp[1]; }

 private:
  struct Tables {
    std::vector<std::uint16_t> log;
    std::vector<Fq> exp;  // doubled length so log sums need no reduction
    std::vector<std::uint8_t> trace;
  };

  void build();

  int r_ = 0;
  std::uint32_t q_ = 0;
  std::uint32_t modulus_ = 0;
  std::shared_ptr<const Tables> tables_;
};

inline Field make_field(int r) { return Field(r); }

// Carry-less polynomial arithmetic over F_2, used for table construction and
// the irreducibility check.
std::uint32_t poly_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus);
std::uint32_t poly_mod(std::uint32_t a, std::uint32_t modulus);
int poly_degree(std::uint32_t a);
bool is_irreducible(std::uint32_t poly);

}  // namespace kmoment
