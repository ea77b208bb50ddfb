#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "plaut/mpoly.hpp"

namespace plaut {

using Point = std::array<Scalar, 2>;

/// A polynomial endomorphism (gx, gy) of the plane. Both components live in
/// the ambient {x, y}.
///
/// Composition convention: compose(g, h) is g after h, so that
/// apply(compose(g, h), p) == apply(g, apply(h, p)).
class PlaneMap {
 public:
  PlaneMap(MPoly gx, MPoly gy);

  static PlaneMap identity(const Field& field);
  /// The swap (y, x).
  static PlaneMap swap(const Field& field);
  /// Parses "(expr, expr)".
  static PlaneMap parse(std::string_view text, const Field& field);

  const MPoly& gx() const noexcept { return gx_; }
  const MPoly& gy() const noexcept { return gy_; }
  const Field& field() const noexcept { return gx_.field(); }

  /// max of the component degrees; nullopt only for the zero map.
  Degree degree() const;
  bool is_identity() const;
  PlaneMap lift(const Field& target) const;

  friend bool operator==(const PlaneMap& a, const PlaneMap& b) = default;
  std::string to_string() const;

 private:
  MPoly gx_;
  MPoly gy_;
};

/// Parses "(expr, expr)" over the given variables; positions in errors refer
/// to the whole text.
std::pair<MPoly, MPoly> parse_pair(std::string_view text, const VarList& vars, const Field& field);

PlaneMap compose(const PlaneMap& g, const PlaneMap& h);
Point apply(const PlaneMap& g, const Point& p);
MPoly jacobian_det(const PlaneMap& g);

/// Membership of a map in the subgroups of the plane automorphism group:
/// S = A ∩ E, A the affine group, E the elementary maps (ax + P(y), by + c).
struct FactorClass {
  enum class Tag { S, AffineOnly, ElementaryOnly, General };
  Tag tag = Tag::General;
  /// For ElementaryOnly: least n with the map in E_n (n = deg P).
  std::uint32_t n = 0;

  friend bool operator==(const FactorClass&, const FactorClass&) = default;
};

FactorClass classify_factor(const PlaneMap& g);
std::string to_string(const FactorClass& c);

/// (a x + P(y), b y + c), with P a polynomial in y in the ambient {x, y}.
struct ElementaryParts {
  Scalar a;
  MPoly p;
  Scalar b;
  Scalar c;
};

/// Parts of an elementary automorphism; nullopt unless g has the E-shape
/// with ab != 0.
std::optional<ElementaryParts> elementary_parts(const PlaneMap& g);
PlaneMap from_parts(const ElementaryParts& e);

/// (m00 x + m01 y + t0, m10 x + m11 y + t1).
struct AffineParts {
  std::array<std::array<Scalar, 2>, 2> m;
  std::array<Scalar, 2> t;

  Scalar det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

/// Parts of an invertible affine map; nullopt otherwise.
std::optional<AffineParts> affine_parts(const PlaneMap& g);
PlaneMap from_parts(const AffineParts& a);

/// Closed-form inverses; throw NotAnAutomorphism outside E or A.
PlaneMap invert_elementary(const PlaneMap& g);
PlaneMap invert_affine(const PlaneMap& g);

}  // namespace plaut
