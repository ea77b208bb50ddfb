#pragma once

#include <cstdint>
#include <vector>

#include "plaut/plane_map.hpp"

namespace plaut {

/// Solution set of g(p) = p.
struct FixedSet {
  enum class Kind { WholePlane, Finite, InfiniteCurve };

  Kind kind = Kind::Finite;
  /// InfiniteCurve: the square-free part of gcd(gx - x, gy - y), where an
  /// identically zero equation imposes nothing.
  std::vector<MPoly> components;
  /// Finite: every fixed point with coordinates in the base field.
  /// InfiniteCurve: the fixed points off the curve.
  std::vector<Point> points;
  /// Degree in y of the eliminating resultant Res_x(u, v) (nullopt when no
  /// elimination was needed) and the Bezout bound deg u * deg v.
  std::optional<std::uint32_t> resultant_degree;
  std::uint64_t bezout_bound = 0;
  /// False when the rational root search over Q hit its factorization limits.
  bool points_complete = true;
};

FixedSet fixed_set(const PlaneMap& g);

std::string to_string(FixedSet::Kind kind);

/// Common zeros over the base field of coprime u, v in x, y (sorted).
struct CommonZeros {
  std::vector<Point> points;
  std::optional<std::uint32_t> resultant_degree;
  bool complete = true;
};
CommonZeros common_zeros(const MPoly& u, const MPoly& v);

}  // namespace plaut
