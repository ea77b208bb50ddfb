#include "plaut/fixed_set.hpp"

#include <algorithm>

#include "plaut/errors.hpp"
#include "plaut/gcd.hpp"
#include "plaut/upoly.hpp"

namespace plaut {

namespace {

// f(x, y0) as a polynomial in x.
UPoly at_y(const MPoly& f, const Scalar& y0) {
  std::vector<Scalar> coeffs;
  for (const auto& t : f.terms()) {
    const std::size_t ex = t.exps[0];
    if (coeffs.size() <= ex) coeffs.resize(ex + 1, Scalar::zero(f.field()));
    coeffs[ex] += t.coef * y0.pow(t.exps[1]);
  }
  return UPoly(f.field(), std::move(coeffs));
}

bool point_less(const Point& a, const Point& b) {
  const auto c = a[0].compare(b[0]);
  if (c != 0) return c < 0;
  return a[1].compare(b[1]) < 0;
}

}  // namespace

std::string to_string(FixedSet::Kind kind) {
  switch (kind) {
    case FixedSet::Kind::WholePlane: return "WholePlane";
    case FixedSet::Kind::Finite: return "Finite";
    case FixedSet::Kind::InfiniteCurve: return "InfiniteCurve";
  }
  return "Finite";
}

CommonZeros common_zeros(const MPoly& u, const MPoly& v) {
  CommonZeros out;
  if (u.is_zero() || v.is_zero()) throw DegenerateInput("common zeros need two nonzero equations");
  if (u.is_constant() || v.is_constant()) return out;
  const UPoly r = resultant_x(u, v);
  out.resultant_degree = r.degree().value_or(0);
  if (r.is_zero()) throw DegenerateInput("equations share a common factor");
  const RootSearch ys = find_roots(r);
  out.complete = ys.complete;
  for (const auto& y0 : ys.roots) {
    const UPoly g = gcd(at_y(u, y0), at_y(v, y0));
    if (g.is_zero()) throw DegenerateInput("equations share a common factor");
    const RootSearch xs = find_roots(g);
    out.complete = out.complete && xs.complete;
    for (const auto& x0 : xs.roots) out.points.push_back({x0, y0});
  }
  std::sort(out.points.begin(), out.points.end(), point_less);
  return out;
}

FixedSet fixed_set(const PlaneMap& g) {
  const Field& field = g.field();
  const MPoly u = g.gx() - MPoly::variable("x", field, xy_vars());
  const MPoly v = g.gy() - MPoly::variable("y", field, xy_vars());
  FixedSet out;
  if (u.is_zero() && v.is_zero()) {
    out.kind = FixedSet::Kind::WholePlane;
    return out;
  }
  out.bezout_bound = std::uint64_t{u.total_degree().value_or(0)} * v.total_degree().value_or(0);
  const MPoly common = gcd_bivariate(u, v);
  if (!common.is_constant()) {
    out.kind = FixedSet::Kind::InfiniteCurve;
    const MPoly curve = squarefree_part(common);
    out.components.push_back(curve);
    if (!u.is_zero() && !v.is_zero()) {
      CommonZeros rest = common_zeros(divide_exact(u, common), divide_exact(v, common));
      out.resultant_degree = rest.resultant_degree;
      out.points_complete = rest.complete;
      for (const auto& p : rest.points) {
        if (!curve.evaluate(p).is_zero()) out.points.push_back(p);
      }
    }
    return out;
  }
  out.kind = FixedSet::Kind::Finite;
  if (u.is_zero() || v.is_zero()) return out;  // a nonzero constant equation
  CommonZeros zeros = common_zeros(u, v);
  out.points = std::move(zeros.points);
  out.resultant_degree = zeros.resultant_degree;
  out.points_complete = zeros.complete;
  return out;
}

}  // namespace plaut
