#include "plaut/jung.hpp"

#include "plaut/errors.hpp"

namespace plaut {

AltWord decompose(const PlaneMap& f) {
  const Field& field = f.field();
  if (f.gx().is_zero() && f.gy().is_zero()) throw DegenerateInput("the zero map");
  const std::uint32_t start = f.degree().value_or(0);
  const std::size_t budget = 10 * static_cast<std::size_t>(start) + 10;
  const PlaneMap tau = PlaneMap::swap(field);
  const MPoly x = MPoly::variable("x", field, xy_vars());
  const MPoly y = MPoly::variable("y", field, xy_vars());

  // Invariant: f = letters[0] o ... o letters[k-1] o g.
  AltWord letters;
  PlaneMap g = f;
  for (std::size_t step = 0;; ++step) {
    if (step > budget) throw InternalError("degree reduction exceeded its iteration budget");
    if (g.gx().is_constant() || g.gy().is_constant()) throw NotAnAutomorphism("a component is constant");
    const std::uint32_t dx = *g.gx().total_degree();
    const std::uint32_t dy = *g.gy().total_degree();
    if (std::max(dx, dy) <= 1) {
      if (!affine_parts(g)) throw NotAnAutomorphism("singular affine part");
      letters.push_back(Letter{Factor::A, g});
      break;
    }
    if (dx < dy) {
      g = PlaneMap(g.gy(), g.gx());
      letters.push_back(Letter{Factor::A, tau});
      continue;
    }
    if (dx % dy != 0) throw NotAnAutomorphism("component degrees do not divide");
    const unsigned k = dx / dy;
    const MPoly lx = g.gx().leading_form();
    const MPoly ly = g.gy().leading_form().pow(k);
    const Term& top_x = lx.terms().front();
    const Term& top_y = ly.terms().front();
    if (top_x.exps != top_y.exps) throw NotAnAutomorphism("leading forms are not proportional");
    const Scalar c = top_x.coef / top_y.coef;
    if (!(lx == ly.scaled(c))) throw NotAnAutomorphism("leading forms are not proportional");
    const MPoly shear = y.pow(k).scaled(c);
    g = PlaneMap(g.gx() - g.gy().pow(k).scaled(c), g.gy());
    letters.push_back(Letter{Factor::E, PlaneMap(x + shear, y)});
  }
  return canonicalize(letters);
}

bool is_automorphism(const PlaneMap& f) {
  if (f.field().is_rational()) {
    const auto j = jacobian_det(f).constant_value();
    if (!j || j->is_zero()) return false;
  }
  try {
    decompose(f);
    return true;
  } catch (const NotAnAutomorphism&) {
    return false;
  } catch (const DegenerateInput&) {
    return false;
  }
}

PlaneMap invert(const PlaneMap& f) { return multiply_out(word_inverse(decompose(f)), f.field()); }

}  // namespace plaut
