#include "plaut/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "plaut/errors.hpp"

namespace plaut {

namespace {

bool lex_greater(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : e) {
      h ^= v;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents out{};
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    const std::uint32_t s = std::uint32_t{a[i]} + b[i];
    if (s > 0xFFFF) throw DegreeOverflow();
    out[i] = static_cast<std::uint16_t>(s);
  }
  return out;
}

std::shared_ptr<const VarList> share(VarList vars) {
  static const auto xy = std::make_shared<const VarList>(VarList{"x", "y"});
  if (vars == *xy) return xy;
  if (vars.size() > kMaxVars) {
    throw ArityMismatch("at most " + std::to_string(kMaxVars) + " variables are supported");
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      if (vars[i] == vars[j]) throw ArityMismatch("duplicate variable '" + vars[i] + "'");
    }
  }
  return std::make_shared<const VarList>(std::move(vars));
}

}  // namespace

const VarList& xy_vars() {
  static const VarList vars{"x", "y"};
  return vars;
}

MPoly::MPoly(const Field& field, VarList vars) : field_(field), vars_(share(std::move(vars))) {}

MPoly MPoly::constant(const Scalar& c, VarList vars) {
  MPoly p(c.field(), std::move(vars));
  if (!c.is_zero()) p.terms_.push_back(Term{Exponents{}, c});
  return p;
}

MPoly MPoly::variable(std::string_view name, const Field& field, VarList vars) {
  MPoly p(field, std::move(vars));
  Exponents e{};
  e[p.var_index(name)] = 1;
  p.terms_.push_back(Term{e, Scalar::one(field)});
  return p;
}

MPoly MPoly::monomial(const Exponents& exps, const Scalar& c, VarList vars) {
  MPoly p(c.field(), std::move(vars));
  for (std::size_t i = p.arity(); i < kMaxVars; ++i) {
    if (exps[i] != 0) throw ArityMismatch("exponent outside the ambient arity");
  }
  if (!c.is_zero()) p.terms_.push_back(Term{exps, c});
  return p;
}

MPoly MPoly::from_terms(const Field& field, VarList vars, std::vector<Term> terms) {
  MPoly p(field, std::move(vars));
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return lex_greater(a.exps, b.exps); });
  for (auto& t : terms) {
    if (!(t.coef.field() == field)) throw FieldMismatch("term coefficient in another field");
    for (std::size_t i = p.arity(); i < kMaxVars; ++i) {
      if (t.exps[i] != 0) throw ArityMismatch("exponent outside the ambient arity");
    }
    if (!p.terms_.empty() && p.terms_.back().exps == t.exps) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
  return p;
}

std::optional<std::size_t> MPoly::find_var(std::string_view name) const {
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    if ((*vars_)[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t MPoly::var_index(std::string_view name) const {
  if (auto i = find_var(name)) return *i;
  throw ArityMismatch("variable '" + std::string(name) + "' is not in the ambient list");
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exps == Exponents{});
}

std::optional<Scalar> MPoly::constant_value() const {
  if (terms_.empty()) return Scalar::zero(field_);
  if (terms_.size() == 1 && terms_[0].exps == Exponents{}) return terms_[0].coef;
  return std::nullopt;
}

Scalar MPoly::coefficient(const Exponents& exps) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exps,
                             [](const Term& t, const Exponents& e) { return lex_greater(t.exps, e); });
  if (it != terms_.end() && it->exps == exps) return it->coef;
  return Scalar::zero(field_);
}

const Scalar& MPoly::leading_coefficient() const {
  if (terms_.empty()) throw DegenerateInput("zero polynomial has no leading coefficient");
  return terms_.front().coef;
}

void MPoly::check_compatible(const MPoly& rhs) const {
  if (!(field_ == rhs.field_)) {
    throw FieldMismatch("polynomial fields differ: " + field_.name() + " vs " + rhs.field_.name());
  }
  if (vars_ != rhs.vars_ && *vars_ != *rhs.vars_) {
    throw ArityMismatch("polynomials have different ambient variables");
  }
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

MPoly& MPoly::operator+=(const MPoly& rhs) {
  check_compatible(rhs);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < rhs.terms_.size()) {
    if (j == rhs.terms_.size() ||
        (i < terms_.size() && lex_greater(terms_[i].exps, rhs.terms_[j].exps))) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || lex_greater(rhs.terms_[j].exps, terms_[i].exps)) {
      merged.push_back(rhs.terms_[j++]);
    } else {
      Term t = std::move(terms_[i++]);
      t.coef += rhs.terms_[j++].coef;
      if (!t.coef.is_zero()) merged.push_back(std::move(t));
    }
  }
  terms_ = std::move(merged);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& rhs) { return *this += -rhs; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_compatible(b);
  MPoly out(a.field_, VarList{});
  out.vars_ = a.vars_;
  if (a.is_zero() || b.is_zero()) return out;
  const MPoly& big = a.size() >= b.size() ? a : b;
  const MPoly& small = a.size() >= b.size() ? b : a;
  if (small.size() == 1) {
    const Term& s = small.terms_[0];
    out.terms_.reserve(big.size());
    for (const auto& t : big.terms_) {
      Term r{add_exponents(t.exps, s.exps), t.coef * s.coef};
      if (!r.coef.is_zero()) out.terms_.push_back(std::move(r));
    }
    return out;  // a monomial multiplier preserves the term order
  }
  std::unordered_map<Exponents, std::size_t, ExponentsHash> index;
  index.reserve(big.size() * small.size());
  std::vector<Term> acc;
  for (const auto& s : small.terms_) {
    for (const auto& t : big.terms_) {
      Exponents e = add_exponents(s.exps, t.exps);
      auto [it, inserted] = index.try_emplace(e, acc.size());
      if (inserted) {
        acc.push_back(Term{e, s.coef * t.coef});
      } else {
        acc[it->second].coef.add_product(s.coef, t.coef);
      }
    }
  }
  std::erase_if(acc, [](const Term& t) { return t.coef.is_zero(); });
  std::sort(acc.begin(), acc.end(),
            [](const Term& x, const Term& y) { return lex_greater(x.exps, y.exps); });
  out.terms_ = std::move(acc);
  return out;
}

MPoly& MPoly::operator*=(const MPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

MPoly MPoly::scaled(const Scalar& c) const {
  if (!(c.field() == field_)) throw FieldMismatch("scalar from another field");
  MPoly out(field_, VarList{});
  out.vars_ = vars_;
  if (c.is_zero()) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back(Term{t.exps, t.coef * c});
  return out;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result = constant(Scalar::one(field_), *vars_);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

Degree MPoly::total_degree() const {
  Degree d;
  for (const auto& t : terms_) {
    std::uint32_t s = 0;
    for (auto v : t.exps) s += v;
    if (!d || s > *d) d = s;
  }
  return d;
}

Degree MPoly::total_degree(std::span<const std::size_t> var_indices) const {
  Degree d;
  for (const auto& t : terms_) {
    std::uint32_t s = 0;
    for (auto i : var_indices) s += t.exps[i];
    if (!d || s > *d) d = s;
  }
  return d;
}

Degree MPoly::total_degree(std::initializer_list<std::string_view> names) const {
  std::vector<std::size_t> idx;
  for (auto n : names) {
    if (auto i = find_var(n)) idx.push_back(*i);
  }
  return total_degree(idx);
}

Degree MPoly::degree_in(std::size_t var) const {
  Degree d;
  for (const auto& t : terms_) {
    if (!d || t.exps[var] > *d) d = t.exps[var];
  }
  return d;
}

MPoly MPoly::leading_form() const {
  const std::size_t ix = var_index("x");
  const std::size_t iy = var_index("y");
  MPoly out(field_, VarList{});
  out.vars_ = vars_;
  const std::array<std::size_t, 2> idx{ix, iy};
  const Degree d = total_degree(idx);
  if (!d) return out;
  for (const auto& t : terms_) {
    if (std::uint32_t{t.exps[ix]} + t.exps[iy] == *d) out.terms_.push_back(t);
  }
  return out;
}

MPoly MPoly::derivative(std::size_t var) const {
  MPoly out(field_, VarList{});
  out.vars_ = vars_;
  for (const auto& t : terms_) {
    if (t.exps[var] == 0) continue;
    Term r{t.exps, t.coef * Scalar::from_int(t.exps[var], field_)};
    r.exps[var] -= 1;
    if (!r.coef.is_zero()) out.terms_.push_back(std::move(r));
  }
  return out;
}

Scalar MPoly::evaluate(std::span<const Scalar> point) const {
  if (point.size() != arity()) throw ArityMismatch("evaluation point has the wrong arity");
  Scalar sum = Scalar::zero(field_);
  for (const auto& t : terms_) {
    Scalar m = t.coef;
    for (std::size_t i = 0; i < arity(); ++i) {
      if (t.exps[i] != 0) m *= point[i].pow(t.exps[i]);
    }
    sum += m;
  }
  return sum;
}

MPoly MPoly::embed(const VarList& vars) const {
  if (vars == *vars_) return *this;
  std::vector<std::optional<std::size_t>> map(arity());
  MPoly target(field_, vars);
  for (std::size_t i = 0; i < arity(); ++i) map[i] = target.find_var((*vars_)[i]);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term r{Exponents{}, t.coef};
    for (std::size_t i = 0; i < arity(); ++i) {
      if (t.exps[i] == 0) continue;
      if (!map[i]) {
        throw ArityMismatch("variable '" + (*vars_)[i] + "' does not exist in the target ambient");
      }
      r.exps[*map[i]] = t.exps[i];
    }
    out.push_back(std::move(r));
  }
  return from_terms(field_, vars, std::move(out));
}

MPoly MPoly::lift(const Field& target) const {
  if (field_ == target) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(Term{t.exps, t.coef.lift(target)});
  return from_terms(target, *vars_, std::move(out));
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (!(a.field_ == b.field_)) return false;
  if (a.vars_ != b.vars_ && *a.vars_ != *b.vars_) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exps != b.terms_[i].exps || !(a.terms_[i].coef == b.terms_[i].coef)) {
      return false;
    }
  }
  return true;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string monomial;
    for (std::size_t i = 0; i < arity(); ++i) {
      if (t.exps[i] == 0) continue;
      if (!monomial.empty()) monomial += "*";
      monomial += (*vars_)[i];
      if (t.exps[i] > 1) monomial += "^" + std::to_string(t.exps[i]);
    }
    std::string coef = t.coef.to_string();
    bool negative = false;
    if (!t.coef.is_compound() && coef.front() == '-') {
      negative = true;
      coef.erase(0, 1);
    }
    if (t.coef.is_compound()) coef = "(" + coef + ")";
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (monomial.empty()) {
      os << coef;
    } else if (coef == "1") {
      os << monomial;
    } else {
      os << coef << "*" << monomial;
    }
  }
  return os.str();
}

MPoly substitute(const MPoly& f, const std::map<std::string, MPoly>& assignment) {
  if (assignment.empty()) return f;
  const MPoly& ref = assignment.begin()->second;
  const VarList& target = ref.vars();
  const Field& field = ref.field();
  if (!(field == f.field())) throw FieldMismatch("substitution across fields");
  for (const auto& [name, value] : assignment) {
    if (!(value.field() == field)) throw FieldMismatch("substitution values in different fields");
    if (value.vars() != target) throw ArityMismatch("substitution values use different ambients");
  }
  // One replacement polynomial per source variable, with cached powers.
  std::vector<MPoly> images;
  images.reserve(f.arity());
  for (const auto& name : f.vars()) {
    auto it = assignment.find(name);
    if (it != assignment.end()) {
      images.push_back(it->second);
    } else {
      MPoly probe(field, target);
      if (probe.find_var(name)) {
        images.push_back(MPoly::variable(name, field, target));
      } else {
        images.push_back(MPoly(field, target));  // only valid if unused
        const auto idx = f.var_index(name);
        if (f.degree_in(idx).value_or(0) > 0) {
          throw ArityMismatch("variable '" + name + "' has no substitution and no target");
        }
      }
    }
  }
  std::vector<std::vector<MPoly>> powers(f.arity());
  auto power_of = [&](std::size_t var, std::uint16_t e) -> const MPoly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(MPoly::constant(Scalar::one(field), target));
    while (cache.size() <= e) cache.push_back(cache.back() * images[var]);
    return cache[e];
  };
  MPoly result(field, target);
  // Horner in the first variable: group terms by their exponent of it.
  const auto terms = f.terms();
  std::size_t i = 0;
  std::vector<std::pair<std::uint16_t, MPoly>> groups;
  while (i < terms.size()) {
    const std::uint16_t e0 = terms[i].exps[0];
    MPoly rest(field, target);
    while (i < terms.size() && terms[i].exps[0] == e0) {
      MPoly m = MPoly::constant(terms[i].coef, target);
      for (std::size_t v = 1; v < f.arity(); ++v) {
        if (terms[i].exps[v] != 0) m *= power_of(v, terms[i].exps[v]);
      }
      rest += m;
      ++i;
    }
    groups.emplace_back(e0, std::move(rest));
  }
  // groups are in descending order of e0.
  for (std::size_t g = 0; g < groups.size(); ++g) {
    result += groups[g].second;
    const std::uint16_t next = g + 1 < groups.size() ? groups[g + 1].first : 0;
    const std::uint16_t step = groups[g].first - next;
    if (step > 0) result *= power_of(0, step);
  }
  return result;
}

}  // namespace plaut
