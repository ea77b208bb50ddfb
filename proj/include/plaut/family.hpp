#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "plaut/plane_map.hpp"

namespace plaut {

/// A parametrized map (F, G) with F, G in K[x, y, z_1..z_m]. The ambient
/// variable list is x, y followed by the parameter names.
class ParamFamily {
 public:
  ParamFamily(MPoly f, MPoly g, std::vector<std::string> params);

  /// Parses "(expr, expr)" over x, y and the given parameters.
  static ParamFamily parse(std::string_view text, const std::vector<std::string>& params, const Field& field);
  /// A constant family (no dependence on the parameters).
  static ParamFamily constant(const PlaneMap& map, const std::vector<std::string>& params);

  const MPoly& f() const noexcept { return f_; }
  const MPoly& g() const noexcept { return g_; }
  const std::vector<std::string>& params() const noexcept { return params_; }
  const VarList& ambient() const { return f_.vars(); }
  const Field& field() const noexcept { return f_.field(); }

  /// Substitutes parameter values (one per parameter).
  PlaneMap specialize(const std::vector<Scalar>& values) const;
  ParamFamily lift(const Field& target) const;

  /// Coefficient of x^ex y^ey, a polynomial in the parameters (same ambient).
  MPoly coefficient_f(std::uint16_t ex, std::uint16_t ey) const;
  MPoly coefficient_g(std::uint16_t ex, std::uint16_t ey) const;

  friend bool operator==(const ParamFamily&, const ParamFamily&) = default;
  std::string to_string() const;

 private:
  MPoly f_;
  MPoly g_;
  std::vector<std::string> params_;
};

/// g o family and family o h.
ParamFamily compose(const PlaneMap& g, const ParamFamily& family);
ParamFamily compose(const ParamFamily& family, const PlaneMap& h);

/// Coefficient of x^ex y^ey of a polynomial over x, y, z (ambient kept).
MPoly xy_coefficient(const MPoly& f, std::uint16_t ex, std::uint16_t ey);

/// True when the polynomial does not involve any of the given variables.
bool free_of(const MPoly& f, std::initializer_list<std::size_t> vars);

}  // namespace plaut
