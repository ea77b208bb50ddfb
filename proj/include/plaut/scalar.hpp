#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace plaut {

/// The active coefficient field: the rationals, a prime field F_p, or the
/// quadratic extension F_{p^2} = F_p[w]/(w^2 - r) with r the least quadratic
/// non-residue mod p. Primes are limited to p < 2^31 so that residue products
/// fit in 64 bits.
class Field {
 public:
  enum class Kind : std::uint8_t { Rational, Prime, PrimeSquare };

  static Field rationals() { return Field(Kind::Rational, 0, 0); }
  static Field prime(std::uint64_t p);
  static Field prime_square(std::uint64_t p);

  /// "q" | "fp:<p>" | "fp2:<p>"
  static Field parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == Kind::Rational; }
  bool is_finite() const noexcept { return kind_ != Kind::Rational; }
  std::uint64_t characteristic() const noexcept { return p_; }
  std::uint64_t nonresidue() const noexcept { return r_; }
  /// Number of elements; 0 for the rationals.
  std::uint64_t order() const noexcept;
  /// F_p for F_{p^2}; the field itself otherwise.
  Field base() const;
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(Kind kind, std::uint64_t p, std::uint64_t r) : kind_(kind), p_(p), r_(r) {}

  Kind kind_;
  std::uint64_t p_;
  std::uint64_t r_;
};

bool is_prime(std::uint64_t n);

/// An element of a `Field`. Rationals are kept in lowest terms with positive
/// denominator; residues are kept in [0, p).
class Scalar {
 public:
  Scalar() : field_(Field::rationals()), value_(mpq_class(0)) {}

  static Scalar zero(const Field& field);
  static Scalar one(const Field& field);
  static Scalar from_int(long long v, const Field& field);
  static Scalar from_mpz(const mpz_class& v, const Field& field);
  static Scalar from_rational(const mpq_class& v, const Field& field);
  /// a + b*w in F_{p^2}; plain residue `a` in F_p (b must be 0).
  static Scalar from_residues(std::uint64_t a, std::uint64_t b, const Field& field);
  /// The generator w of F_{p^2} over F_p.
  static Scalar extension_generator(const Field& field);
  /// Enumerates a finite field: index in [0, q).
  static Scalar element(std::uint64_t index, const Field& field);

  const Field& field() const noexcept { return field_; }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint64_t residue() const { return std::get<Residues>(value_)[0]; }
  std::uint64_t residue_w() const { return std::get<Residues>(value_)[1]; }
  /// True when the value is an element of the prime subfield (always true
  /// outside F_{p^2}).
  bool in_base_field() const;
  /// Index of this element in the `element()` enumeration.
  std::uint64_t index() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  /// this += a * b
  void add_product(const Scalar& a, const Scalar& b);

  Scalar inverse() const;
  Scalar pow(std::int64_t e) const;
  /// A square root in this field if one exists.
  std::optional<Scalar> sqrt() const;
  /// Embeds into `target` (F_p into F_{p^2}); identity when fields agree.
  Scalar lift(const Field& target) const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  /// Total order within one field, used for canonical containers.
  std::strong_ordering compare(const Scalar& other) const;

  std::string to_string() const;
  /// Whether `to_string()` needs parentheses as a product factor.
  bool is_compound() const;
  std::size_t hash() const;

 private:
  using Residues = std::array<std::uint64_t, 2>;

  Scalar(const Field& field, mpq_class q) : field_(field), value_(std::move(q)) {}
  Scalar(const Field& field, Residues r) : field_(field), value_(r) {}

  void check_same_field(const Scalar& rhs) const;

  Field field_;
  std::variant<mpq_class, Residues> value_;
};

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t mod);

}  // namespace plaut
