#pragma once

#include <utility>
#include <vector>

#include "plaut/mpoly.hpp"
#include "plaut/scalar.hpp"

namespace plaut {

/// Dense univariate polynomial, coefficients stored low degree first with no
/// trailing zeros. Used for the coefficient ring K[y] of bivariate gcd and
/// resultant computations, and for root finding.
class UPoly {
 public:
  explicit UPoly(const Field& field) : field_(field) {}
  UPoly(const Field& field, std::vector<Scalar> coeffs);

  static UPoly constant(const Scalar& c);
  static UPoly monomial(const Scalar& c, std::size_t degree);

  const Field& field() const noexcept { return field_; }
  const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }
  Degree degree() const;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  Scalar coeff(std::size_t i) const;
  const Scalar& lc() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) = default;
  UPoly scaled(const Scalar& c) const;
  UPoly monic() const;
  UPoly derivative() const;
  Scalar evaluate(const Scalar& at) const;

 private:
  void trim();

  Field field_;
  std::vector<Scalar> coeffs_;
};

/// Euclidean division; throws DivisionByZero for a zero divisor.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Exact quotient; throws InternalError if the division leaves a remainder.
UPoly exact_div(const UPoly& a, const UPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
UPoly pow_mod(const UPoly& base, std::uint64_t exp, const UPoly& mod);

struct RootSearch {
  std::vector<Scalar> roots;  // distinct, sorted by Scalar::compare
  bool complete = true;       // false when a rational search hit its limits
};

/// Distinct roots in the coefficient field. Over finite fields the search is
/// exhaustive; over Q it uses the rational root theorem and reports
/// `complete = false` if the integer factorizations it needs are too large.
RootSearch find_roots(const UPoly& f);

/// Views a polynomial depending only on `var` as a univariate polynomial.
UPoly to_upoly(const MPoly& f, std::size_t var);
MPoly to_mpoly(const UPoly& f, std::size_t var, const VarList& vars);

}  // namespace plaut
