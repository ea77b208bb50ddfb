#include "plaut/nilpotent.hpp"

#include <map>
#include <random>

#include "plaut/errors.hpp"
#include "plaut/jung.hpp"
#include "plaut/random.hpp"
#include "plaut/upoly.hpp"

namespace plaut {

PlaneMap commutator(const PlaneMap& g, const PlaneMap& h) {
  return compose(invert(g), compose(invert(h), compose(g, h)));
}

PlaneMap conjugation(const PlaneMap& h, const PlaneMap& g) { return compose(invert(g), compose(h, g)); }

std::string NilTemplate::to_string() const {
  switch (id) {
    case Id::T1: return "T1";
    case Id::T2: return "T2";
    case Id::T3: return "T3(" + std::to_string(param) + ")";
    case Id::T4: return "T4(" + std::to_string(param) + ")";
  }
  return "T1";
}

NilTemplate NilTemplate::parse(std::string_view text) {
  if (text == "T1") return {Id::T1, 0};
  if (text == "T2") return {Id::T2, 0};
  if (text.size() > 4 && (text.substr(0, 3) == "T3(" || text.substr(0, 3) == "T4(") && text.back() == ')') {
    const std::string digits(text.substr(3, text.size() - 4));
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 6) {
      return {text[1] == '3' ? Id::T3 : Id::T4, static_cast<std::uint32_t>(std::stoul(digits))};
    }
  }
  throw ParseError("unknown template '" + std::string(text) + "'", 0);
}

namespace {

using Key = std::pair<std::uint16_t, std::uint16_t>;

// Groups a polynomial over x, y, z by its (x, y) exponents.
std::map<Key, MPoly> xy_parts(const MPoly& f) {
  std::map<Key, std::vector<Term>> grouped;
  for (const auto& t : f.terms()) {
    Term r = t;
    r.exps[0] = 0;
    r.exps[1] = 0;
    grouped[{t.exps[0], t.exps[1]}].push_back(r);
  }
  std::map<Key, MPoly> out;
  for (auto& [k, terms] : grouped) out.emplace(k, MPoly::from_terms(f.field(), f.vars(), std::move(terms)));
  return out;
}

bool keys_within(const std::map<Key, MPoly>& parts, std::initializer_list<Key> allowed) {
  for (const auto& [k, v] : parts) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == k;
    if (!ok) return false;
  }
  return true;
}

bool part_is(const std::map<Key, MPoly>& parts, Key k, const MPoly& value) {
  auto it = parts.find(k);
  if (it == parts.end()) return value.is_zero();
  return it->second == value;
}

std::optional<Scalar> constant_ratio(const MPoly& num, const MPoly& den) {
  if (den.is_zero()) return std::nullopt;
  if (num.is_zero()) return Scalar::zero(num.field());
  const Scalar r = num.leading_coefficient() / den.leading_coefficient();
  if (!(num == den.scaled(r))) return std::nullopt;
  return r;
}

Scalar binomial(unsigned n, unsigned k, const Field& field) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Scalar::from_mpz(b, field);
}

ParamFamily conjugate_family(const ParamFamily& family, const PlaneMap& kappa) {
  return compose(invert(kappa), compose(family, kappa));
}

NilNormalForm unknown(std::string reason) {
  NilNormalForm out;
  out.status = NilNormalForm::Status::Unknown;
  out.reason = std::move(reason);
  return out;
}

std::optional<PlaneMap> beta_from_vector(const Scalar& v1, const Scalar& v2) {
  const Field& field = v1.field();
  if (v2.is_zero()) return PlaneMap::identity(field);
  const Scalar m = v1 / v2;
  const MPoly x = MPoly::variable("x", field, xy_vars());
  const MPoly y = MPoly::variable("y", field, xy_vars());
  return PlaneMap(x.scaled(m) + y, x);
}

AffineTriangularization triangularize(const std::vector<PlaneMap>& gens) {
  const Field& field = gens.front().field();
  std::vector<AffineParts> parts;
  for (const auto& g : gens) {
    auto p = affine_parts(g);
    if (!p) throw NotAnAutomorphism("generator " + g.to_string() + " is not an invertible affine map");
    parts.push_back(*p);
  }
  AffineTriangularization out;
  out.field = field;
  const AffineParts* pivot = nullptr;
  for (const auto& p : parts) {
    if (!p.m[0][1].is_zero() || !p.m[1][0].is_zero() || !(p.m[0][0] == p.m[1][1])) {
      pivot = &p;
      break;
    }
  }
  if (!pivot) {
    out.beta = PlaneMap::identity(field);
    return out;
  }
  const auto& m = pivot->m;
  const Scalar tr = m[0][0] + m[1][1];
  const UPoly charpoly(field, {pivot->det(), -tr, Scalar::one(field)});
  const RootSearch eig = find_roots(charpoly);
  if (eig.roots.empty()) {
    if (field.kind() == Field::Kind::Prime) {
      std::vector<PlaneMap> lifted;
      for (const auto& g : gens) lifted.push_back(g.lift(Field::prime_square(field.characteristic())));
      return triangularize(lifted);
    }
    out.status = AffineTriangularization::Status::NeedsFieldExtension;
    return out;
  }
  for (const auto& lambda : eig.roots) {
    // A kernel vector of M - lambda I.
    const Scalar a = m[0][0] - lambda, b = m[0][1], c = m[1][0], d = m[1][1] - lambda;
    Scalar v1 = b, v2 = -a;
    if (a.is_zero() && b.is_zero()) {
      v1 = d;
      v2 = -c;
    }
    if (v1.is_zero() && v2.is_zero()) continue;
    bool common = true;
    for (const auto& p : parts) {
      const Scalar w1 = p.m[0][0] * v1 + p.m[0][1] * v2;
      const Scalar w2 = p.m[1][0] * v1 + p.m[1][1] * v2;
      common = common && (v1 * w2 - v2 * w1).is_zero();
    }
    if (!common) continue;
    const auto beta = beta_from_vector(v1, v2);
    for (const auto& g : gens) {
      if (classify_factor(conjugation(g, *beta)).tag != FactorClass::Tag::S) {
        throw InternalError("triangularizing conjugator failed to verify");
      }
    }
    out.beta = beta;
    return out;
  }
  throw NotTriangularizable("the linear parts have no common eigenvector over " + field.name());
}

}  // namespace

bool template_member(const ParamFamily& family, const NilTemplate& t) {
  const auto f = xy_parts(family.f());
  const auto g = xy_parts(family.g());
  const MPoly one = MPoly::constant(Scalar::one(family.field()), family.ambient());
  const Key kx{1, 0}, ky{0, 1}, k1{0, 0};
  switch (t.id) {
    case NilTemplate::Id::T1:
      return keys_within(f, {kx}) && keys_within(g, {ky}) && f.count(kx) && g.count(ky);
    case NilTemplate::Id::T2:
      return keys_within(f, {kx}) && f.count(kx) && keys_within(g, {ky, k1}) && part_is(g, ky, one);
    case NilTemplate::Id::T3: {
      const Key kl{0, static_cast<std::uint16_t>(t.param)};
      if (!keys_within(g, {ky}) || !g.count(ky) || !keys_within(f, {kx, kl})) return false;
      return part_is(f, kx, g.at(ky).pow(t.param));
    }
    case NilTemplate::Id::T4: {
      if (!keys_within(g, {ky, k1}) || !part_is(g, ky, one) || !part_is(f, kx, one)) return false;
      for (const auto& [k, v] : f) {
        if (k != kx && (k.first != 0 || k.second > t.param)) return false;
      }
      return true;
    }
  }
  return false;
}

bool template_member(const PlaneMap& g, const NilTemplate& t) {
  return template_member(ParamFamily(g.gx(), g.gy(), {}), t);
}

AffineTriangularization conjugate_affine_to_S(const std::vector<PlaneMap>& generators) {
  if (generators.empty()) throw DegenerateInput("no generators");
  return triangularize(generators);
}

NilNormalForm normalize_nilpotent_family(const ParamFamily& family, std::uint32_t n, const NilOptions& options) {
  const Field& field = family.field();
  std::mt19937_64 rng(options.seed);
  std::vector<PlaneMap> samples;
  for (std::size_t s = 0; s < options.samples; ++s) {
    std::optional<PlaneMap> spec;
    for (int attempt = 0; attempt < 32 && !spec; ++attempt) {
      std::vector<Scalar> point;
      for (std::size_t i = 0; i < family.params().size(); ++i) point.push_back(random_scalar(rng, field));
      PlaneMap candidate = family.specialize(point);
      if (is_automorphism(candidate)) spec = std::move(candidate);
    }
    if (!spec) throw NotAnAutomorphism("no sampled specialization is an automorphism");
    const FactorClass cls = classify_factor(*spec);
    const bool in_en = cls.tag == FactorClass::Tag::S ||
                       (cls.tag == FactorClass::Tag::ElementaryOnly && cls.n <= n);
    if (!in_en) throw SampleNotInEn("specialization " + spec->to_string() + " is not in E_" + std::to_string(n));
    samples.push_back(std::move(*spec));
  }

  const auto fparts = xy_parts(family.f());
  const auto gparts = xy_parts(family.g());
  const Key kx{1, 0}, ky{0, 1}, k1{0, 0};
  for (const auto& [k, v] : fparts) {
    if (k != kx && k.first != 0) return unknown("the family is not elementary in shape");
  }
  if (!keys_within(gparts, {ky, k1})) return unknown("the family is not elementary in shape");
  const VarList& amb = family.ambient();
  const MPoly zero(field, amb);
  const MPoly one = MPoly::constant(Scalar::one(field), amb);
  auto part = [&](const std::map<Key, MPoly>& parts, Key k) {
    auto it = parts.find(k);
    return it == parts.end() ? zero : it->second;
  };
  const MPoly a = part(fparts, kx);
  const MPoly b = part(gparts, ky);
  const MPoly c = part(gparts, k1);
  const MPoly x = MPoly::variable("x", field, xy_vars());
  const MPoly y = MPoly::variable("y", field, xy_vars());

  PlaneMap kappa = PlaneMap::identity(field);
  NilTemplate tmpl;
  if (!(b == one)) {
    // Move the fixed point of y -> b y + c to the origin.
    const auto y0 = constant_ratio(c, one - b);
    if (!y0) return unknown("the y-translation part is not conjugate to zero by a constant shift");
    kappa = PlaneMap(x, y + MPoly::constant(*y0, xy_vars()));
    const ParamFamily shifted = conjugate_family(family, kappa);
    // Kill every y^i term with a != b^i.
    const auto sparts = xy_parts(shifted.f());
    MPoly r(field, xy_vars());
    for (const auto& [k, p] : sparts) {
      if (k == kx) continue;
      const MPoly gap = a - b.pow(k.second);
      if (gap.is_zero()) continue;
      const auto ri = constant_ratio(-p, gap);
      if (!ri) return unknown("the coefficient of y^" + std::to_string(k.second) + " is not removable by a constant conjugator");
      Exponents e{};
      e[1] = k.second;
      r += MPoly::monomial(e, *ri, xy_vars());
    }
    kappa = compose(kappa, PlaneMap(x + r, y));
    const ParamFamily reduced = conjugate_family(family, kappa);
    std::vector<std::uint16_t> resonant;
    for (const auto& [k, p] : xy_parts(reduced.f())) {
      if (k != kx) resonant.push_back(k.second);
    }
    if (resonant.empty()) {
      tmpl = {NilTemplate::Id::T1, 0};
    } else if (resonant.size() == 1) {
      tmpl = {NilTemplate::Id::T3, resonant.front()};
    } else {
      return unknown("several resonant exponents (b is a root of unity)");
    }
  } else if (a == one) {
    tmpl = {NilTemplate::Id::T4, 0};
    for (const auto& [k, p] : fparts) {
      if (k != kx) tmpl.param = std::max<std::uint32_t>(tmpl.param, k.second);
    }
  } else {
    // Solve a R(y) - R(y + c) = -P(y) for R with constant coefficients, top
    // degree first.
    std::uint32_t top = 0;
    for (const auto& [k, p] : fparts) {
      if (k != kx) top = std::max<std::uint32_t>(top, k.second);
    }
    std::vector<Scalar> rc(top + 1, Scalar::zero(field));
    const MPoly gap = a - one;
    for (std::uint32_t i = top + 1; i-- > 0;) {
      MPoly rhs = -part(fparts, {0, static_cast<std::uint16_t>(i)});
      for (std::uint32_t j = i + 1; j <= top; ++j) {
        if (rc[j].is_zero()) continue;
        rhs += c.pow(j - i).scaled(rc[j] * binomial(j, i, field));
      }
      const auto ri = constant_ratio(rhs, gap);
      if (!ri) return unknown("the y^" + std::to_string(i) + " term is not removable by a constant conjugator");
      rc[i] = *ri;
    }
    MPoly r(field, xy_vars());
    for (std::uint32_t i = 0; i <= top; ++i) {
      Exponents e{};
      e[1] = static_cast<std::uint16_t>(i);
      r += MPoly::monomial(e, rc[i], xy_vars());
    }
    kappa = PlaneMap(x + r, y);
    tmpl = {c.is_zero() ? NilTemplate::Id::T1 : NilTemplate::Id::T2, 0};
  }

  const PlaneMap pre = invert(kappa);
  if (!template_member(compose(pre, compose(family, kappa)), tmpl)) {
    return unknown("the candidate conjugator failed symbolic verification");
  }
  for (const auto& s : samples) {
    if (!template_member(compose(pre, compose(s, kappa)), tmpl)) {
      return unknown("the candidate conjugator failed at a sample");
    }
  }
  NilNormalForm out;
  out.status = NilNormalForm::Status::Found;
  out.tmpl = tmpl;
  out.pre = pre;
  out.post = kappa;
  return out;
}

}  // namespace plaut
