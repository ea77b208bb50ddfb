#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plaut/scalar.hpp"

namespace plaut {

/// Maximum ambient arity: x, y and up to 14 parameter variables.
inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector; slots beyond the ambient arity are always zero.
using Exponents = std::array<std::uint16_t, kMaxVars>;

/// Total degree of a polynomial; `std::nullopt` is the -infinity degree of the
/// zero polynomial (it compares below every real degree).
using Degree = std::optional<std::uint32_t>;

struct Term {
  Exponents exps{};
  Scalar coef;
};

using VarList = std::vector<std::string>;

/// Exact sparse multivariate polynomial over a `Field`. Terms are kept sorted
/// in descending lexicographic order of their exponent vectors (first ambient
/// variable most significant) and never carry a zero coefficient.
class MPoly {
 public:
  MPoly(const Field& field, VarList vars);

  static MPoly constant(const Scalar& c, VarList vars);
  static MPoly variable(std::string_view name, const Field& field, VarList vars);
  static MPoly monomial(const Exponents& exps, const Scalar& c, VarList vars);
  /// Canonicalizes arbitrary terms: merges duplicates and drops zeros.
  static MPoly from_terms(const Field& field, VarList vars, std::vector<Term> terms);

  const Field& field() const noexcept { return field_; }
  const VarList& vars() const noexcept { return *vars_; }
  std::size_t arity() const noexcept { return vars_->size(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  std::optional<std::size_t> find_var(std::string_view name) const;
  std::size_t var_index(std::string_view name) const;

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// The value of a constant polynomial (zero included); nullopt otherwise.
  std::optional<Scalar> constant_value() const;
  /// Coefficient of an exact monomial (zero when absent).
  Scalar coefficient(const Exponents& exps) const;
  /// Leading coefficient in the canonical term order.
  const Scalar& leading_coefficient() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& rhs);
  MPoly& operator-=(const MPoly& rhs);
  MPoly& operator*=(const MPoly& rhs);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly scaled(const Scalar& c) const;
  MPoly pow(unsigned e) const;

  Degree total_degree() const;
  Degree total_degree(std::span<const std::size_t> var_indices) const;
  Degree total_degree(std::initializer_list<std::string_view> names) const;
  Degree degree_in(std::size_t var) const;
  /// Sum of the terms of maximal total degree in x and y.
  MPoly leading_form() const;
  MPoly derivative(std::size_t var) const;
  Scalar evaluate(std::span<const Scalar> point) const;

  /// Re-expresses the polynomial over another variable list (matched by
  /// name). Variables that occur must exist in the target list.
  MPoly embed(const VarList& vars) const;
  /// Maps every coefficient into `target` (e.g. Q -> F_p, F_p -> F_{p^2}).
  MPoly lift(const Field& target) const;

  friend bool operator==(const MPoly& a, const MPoly& b);
  std::string to_string() const;

 private:
  void check_compatible(const MPoly& rhs) const;

  Field field_;
  std::shared_ptr<const VarList> vars_;
  std::vector<Term> terms_;
};

/// Simultaneous substitution. Every replacement must share one ambient
/// variable list, which becomes the ambient of the result; variables of `f`
/// without a replacement are carried over by name.
MPoly substitute(const MPoly& f, const std::map<std::string, MPoly>& assignment);

/// Parses the polynomial text grammar:
///
///   expr    := ['+'|'-'] term { ('+'|'-') term }
///   term    := factor { '*' factor }
///   factor  := ('-'|'+') factor | power
///   power   := primary [ '^' integer ]
///   primary := integer [ '/' integer ] | identifier | '(' expr ')'
///
/// `a/b` is only accepted between two integer literals. In fp2 fields the
/// identifier `w` denotes the extension generator unless it is a variable.
MPoly parse_poly(std::string_view text, const VarList& vars, const Field& field);

const VarList& xy_vars();

}  // namespace plaut
