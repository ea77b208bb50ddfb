#include "plaut/plane_map.hpp"

#include <cctype>

#include "plaut/errors.hpp"

namespace plaut {

namespace {

MPoly var(std::string_view name, const Field& field) { return MPoly::variable(name, field, xy_vars()); }

Exponents xy_exps(std::uint16_t ex, std::uint16_t ey) {
  Exponents e{};
  e[0] = ex;
  e[1] = ey;
  return e;
}

}  // namespace

PlaneMap::PlaneMap(MPoly gx, MPoly gy) : gx_(gx.embed(xy_vars())), gy_(gy.embed(xy_vars())) {
  if (!(gx_.field() == gy_.field())) throw FieldMismatch("map components in different fields");
}

PlaneMap PlaneMap::identity(const Field& field) { return PlaneMap(var("x", field), var("y", field)); }

PlaneMap PlaneMap::swap(const Field& field) { return PlaneMap(var("y", field), var("x", field)); }

PlaneMap PlaneMap::parse(std::string_view text, const Field& field) {
  auto [gx, gy] = parse_pair(text, xy_vars(), field);
  return PlaneMap(std::move(gx), std::move(gy));
}

std::pair<MPoly, MPoly> parse_pair(std::string_view text, const VarList& vars, const Field& field) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '(') throw ParseError("expected '(' to start a map", i);
  const std::size_t open = i++;
  int depth = 0;
  std::size_t comma = std::string_view::npos;
  std::size_t close = std::string_view::npos;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (depth == 0) {
        close = i;
        break;
      }
      --depth;
    } else if (c == ',' && depth == 0) {
      if (comma != std::string_view::npos) throw ParseError("a map has exactly two components", i);
      comma = i;
    }
  }
  if (close == std::string_view::npos) throw ParseError("expected ')' to end the map", text.size());
  if (comma == std::string_view::npos) throw ParseError("expected ',' between map components", close);
  i = close + 1;
  skip();
  if (i != text.size()) throw ParseError("unexpected text after the map", i);
  auto component = [&](std::size_t from, std::size_t to) {
    try {
      return parse_poly(text.substr(from, to - from), vars, field);
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), e.position() + from, e.code());
    }
  };
  return {component(open + 1, comma), component(comma + 1, close)};
}

Degree PlaneMap::degree() const { return std::max(gx_.total_degree(), gy_.total_degree()); }

bool PlaneMap::is_identity() const { return *this == identity(field()); }

PlaneMap PlaneMap::lift(const Field& target) const { return PlaneMap(gx_.lift(target), gy_.lift(target)); }

std::string PlaneMap::to_string() const { return "(" + gx_.to_string() + ", " + gy_.to_string() + ")"; }

PlaneMap compose(const PlaneMap& g, const PlaneMap& h) {
  if (!(g.field() == h.field())) throw FieldMismatch("composing maps over different fields");
  const std::map<std::string, MPoly> at{{"x", h.gx()}, {"y", h.gy()}};
  return PlaneMap(substitute(g.gx(), at), substitute(g.gy(), at));
}

Point apply(const PlaneMap& g, const Point& p) {
  return {g.gx().evaluate(p), g.gy().evaluate(p)};
}

MPoly jacobian_det(const PlaneMap& g) {
  return g.gx().derivative(0) * g.gy().derivative(1) - g.gx().derivative(1) * g.gy().derivative(0);
}

std::optional<ElementaryParts> elementary_parts(const PlaneMap& g) {
  const Field& field = g.field();
  ElementaryParts out{Scalar::zero(field), MPoly(field, xy_vars()), Scalar::zero(field), Scalar::zero(field)};
  for (const auto& t : g.gy().terms()) {
    if (t.exps[0] != 0 || t.exps[1] > 1) return std::nullopt;
    (t.exps[1] == 1 ? out.b : out.c) = t.coef;
  }
  std::vector<Term> p;
  for (const auto& t : g.gx().terms()) {
    if (t.exps[0] == 1 && t.exps[1] == 0) {
      out.a = t.coef;
    } else if (t.exps[0] == 0) {
      p.push_back(t);
    } else {
      return std::nullopt;
    }
  }
  if (out.a.is_zero() || out.b.is_zero()) return std::nullopt;
  out.p = MPoly::from_terms(field, xy_vars(), std::move(p));
  return out;
}

PlaneMap from_parts(const ElementaryParts& e) {
  const Field& field = e.a.field();
  return PlaneMap(var("x", field).scaled(e.a) + e.p,
                  var("y", field).scaled(e.b) + MPoly::constant(e.c, xy_vars()));
}

std::optional<AffineParts> affine_parts(const PlaneMap& g) {
  const Field& field = g.field();
  const Degree d = g.degree();
  if (!d || *d > 1) return std::nullopt;
  const Scalar zero = Scalar::zero(field);
  AffineParts out{{{{zero, zero}, {zero, zero}}}, {zero, zero}};
  const MPoly* comps[2] = {&g.gx(), &g.gy()};
  for (int r = 0; r < 2; ++r) {
    out.m[r][0] = comps[r]->coefficient(xy_exps(1, 0));
    out.m[r][1] = comps[r]->coefficient(xy_exps(0, 1));
    out.t[r] = comps[r]->coefficient(xy_exps(0, 0));
  }
  if (out.det().is_zero()) return std::nullopt;
  return out;
}

PlaneMap from_parts(const AffineParts& a) {
  const Field& field = a.t[0].field();
  const MPoly x = var("x", field), y = var("y", field);
  return PlaneMap(x.scaled(a.m[0][0]) + y.scaled(a.m[0][1]) + MPoly::constant(a.t[0], xy_vars()),
                  x.scaled(a.m[1][0]) + y.scaled(a.m[1][1]) + MPoly::constant(a.t[1], xy_vars()));
}

FactorClass classify_factor(const PlaneMap& g) {
  const auto e = elementary_parts(g);
  const bool affine = affine_parts(g).has_value();
  if (e && affine) return {FactorClass::Tag::S, 1};
  if (affine) return {FactorClass::Tag::AffineOnly, 0};
  if (e) return {FactorClass::Tag::ElementaryOnly, e->p.total_degree().value_or(0)};
  return {FactorClass::Tag::General, 0};
}

std::string to_string(const FactorClass& c) {
  switch (c.tag) {
    case FactorClass::Tag::S: return "S";
    case FactorClass::Tag::AffineOnly: return "AffineOnly";
    case FactorClass::Tag::ElementaryOnly: return "ElementaryOnly(" + std::to_string(c.n) + ")";
    case FactorClass::Tag::General: return "General";
  }
  return "General";
}

PlaneMap invert_elementary(const PlaneMap& g) {
  const auto e = elementary_parts(g);
  if (!e) throw NotAnAutomorphism("not an elementary map");
  const Field& field = g.field();
  const Scalar ia = e->a.inverse(), ib = e->b.inverse();
  // y' = (y - c)/b, x' = (x - P(y'))/a
  const MPoly y_new = (var("y", field) - MPoly::constant(e->c, xy_vars())).scaled(ib);
  const MPoly p_at = substitute(e->p, {{"x", var("x", field)}, {"y", y_new}});
  return PlaneMap((var("x", field) - p_at).scaled(ia), y_new);
}

PlaneMap invert_affine(const PlaneMap& g) {
  const auto a = affine_parts(g);
  if (!a) throw NotAnAutomorphism("not an invertible affine map");
  const Scalar inv = a->det().inverse();
  AffineParts out = *a;
  out.m[0][0] = a->m[1][1] * inv;
  out.m[1][1] = a->m[0][0] * inv;
  out.m[0][1] = -a->m[0][1] * inv;
  out.m[1][0] = -a->m[1][0] * inv;
  for (int r = 0; r < 2; ++r) out.t[r] = -(out.m[r][0] * a->t[0] + out.m[r][1] * a->t[1]);
  return from_parts(out);
}

}  // namespace plaut
