#include "plaut/family.hpp"

#include "plaut/errors.hpp"

namespace plaut {

namespace {

VarList ambient_for(const std::vector<std::string>& params) {
  VarList vars{"x", "y"};
  for (const auto& p : params) {
    if (p == "x" || p == "y") throw ArityMismatch("parameter names must differ from x and y");
    vars.push_back(p);
  }
  return vars;
}

}  // namespace

ParamFamily::ParamFamily(MPoly f, MPoly g, std::vector<std::string> params)
    : f_(f.embed(ambient_for(params))), g_(g.embed(ambient_for(params))), params_(std::move(params)) {
  if (!(f_.field() == g_.field())) throw FieldMismatch("family components in different fields");
}

ParamFamily ParamFamily::parse(std::string_view text, const std::vector<std::string>& params,
                               const Field& field) {
  auto [f, g] = parse_pair(text, ambient_for(params), field);
  return ParamFamily(std::move(f), std::move(g), params);
}

ParamFamily ParamFamily::constant(const PlaneMap& map, const std::vector<std::string>& params) {
  return ParamFamily(map.gx(), map.gy(), params);
}

PlaneMap ParamFamily::specialize(const std::vector<Scalar>& values) const {
  if (values.size() != params_.size()) throw ArityMismatch("one value per parameter is required");
  std::map<std::string, MPoly> at{{"x", MPoly::variable("x", field(), xy_vars())},
                                  {"y", MPoly::variable("y", field(), xy_vars())}};
  for (std::size_t i = 0; i < params_.size(); ++i) at.emplace(params_[i], MPoly::constant(values[i], xy_vars()));
  return PlaneMap(substitute(f_, at), substitute(g_, at));
}

ParamFamily ParamFamily::lift(const Field& target) const {
  return ParamFamily(f_.lift(target), g_.lift(target), params_);
}

MPoly xy_coefficient(const MPoly& f, std::uint16_t ex, std::uint16_t ey) {
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    if (t.exps[0] != ex || t.exps[1] != ey) continue;
    Term r = t;
    r.exps[0] = 0;
    r.exps[1] = 0;
    out.push_back(r);
  }
  return MPoly::from_terms(f.field(), f.vars(), std::move(out));
}

bool free_of(const MPoly& f, std::initializer_list<std::size_t> vars) {
  for (const auto& t : f.terms()) {
    for (auto v : vars) {
      if (t.exps[v] != 0) return false;
    }
  }
  return true;
}

MPoly ParamFamily::coefficient_f(std::uint16_t ex, std::uint16_t ey) const { return xy_coefficient(f_, ex, ey); }
MPoly ParamFamily::coefficient_g(std::uint16_t ex, std::uint16_t ey) const { return xy_coefficient(g_, ex, ey); }

std::string ParamFamily::to_string() const { return "(" + f_.to_string() + ", " + g_.to_string() + ")"; }

ParamFamily compose(const PlaneMap& g, const ParamFamily& family) {
  const std::map<std::string, MPoly> at{{"x", family.f()}, {"y", family.g()}};
  return ParamFamily(substitute(g.gx(), at), substitute(g.gy(), at), family.params());
}

ParamFamily compose(const ParamFamily& family, const PlaneMap& h) {
  const VarList& amb = family.ambient();
  const std::map<std::string, MPoly> at{{"x", h.gx().embed(amb)}, {"y", h.gy().embed(amb)}};
  return ParamFamily(substitute(family.f(), at), substitute(family.g(), at), family.params());
}

}  // namespace plaut
