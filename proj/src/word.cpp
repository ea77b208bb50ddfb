#include "plaut/word.hpp"

#include "plaut/errors.hpp"
#include "plaut/jung.hpp"

namespace plaut {

namespace {

bool in_factor(const FactorClass& c, Factor f) {
  switch (c.tag) {
    case FactorClass::Tag::S: return true;
    case FactorClass::Tag::AffineOnly: return f == Factor::A;
    case FactorClass::Tag::ElementaryOnly: return f == Factor::E;
    case FactorClass::Tag::General: return false;
  }
  return false;
}

// h = rep o r with rep the pinned representative of hS and r in S.
struct Split {
  PlaneMap rep;
  PlaneMap residue;
};

Split split_elementary(const PlaneMap& h) {
  const auto e = elementary_parts(h);
  if (!e) throw InternalError("expected an elementary letter");
  const Field& field = h.field();
  const MPoly x = MPoly::variable("x", field, xy_vars());
  const MPoly y = MPoly::variable("y", field, xy_vars());
  const MPoly shifted = substitute(e->p, {{"x", x}, {"y", (y - MPoly::constant(e->c, xy_vars())).scaled(e->b.inverse())}});
  std::vector<Term> high;
  for (const auto& t : shifted.terms()) {
    if (t.exps[1] >= 2) high.push_back(t);
  }
  const MPoly q = MPoly::from_terms(field, xy_vars(), std::move(high));
  const PlaneMap rep(x + q, y);
  const PlaneMap rep_inv(x - q, y);
  return {rep, compose(rep_inv, h)};
}

Split split_affine(const PlaneMap& h) {
  const auto a = affine_parts(h);
  if (!a) throw InternalError("expected an affine letter");
  const Field& field = h.field();
  const MPoly x = MPoly::variable("x", field, xy_vars());
  const MPoly y = MPoly::variable("y", field, xy_vars());
  const Scalar m = a->m[0][0] / a->m[1][0];
  const PlaneMap rep(x.scaled(m) + y, x);
  const PlaneMap rep_inv(y, x - y.scaled(m));
  return {rep, compose(rep_inv, h)};
}

// Stack reduction of a letter stream into an alternating word without S
// letters, keeping a leading S element aside while the stack is empty.
class Reducer {
 public:
  explicit Reducer(const Field& field) : pending_(PlaneMap::identity(field)) {}

  void push(Factor tag, const PlaneMap& map) {
    const FactorClass cls = classify_factor(map);
    if (!in_factor(cls, tag)) throw InvalidWord("letter " + map.to_string() + " is not in factor " + to_string(tag));
    push(cls, map);
  }

  AltWord finish() {
    if (out_.empty()) {
      if (pending_.is_identity()) return {};
      return {Letter{Factor::A, pending_}};
    }
    return out_;
  }

 private:
  void push(const FactorClass& cls, const PlaneMap& map) {
    if (cls.tag == FactorClass::Tag::S) {
      if (out_.empty()) {
        pending_ = compose(pending_, map);
      } else {
        out_.back().map = compose(out_.back().map, map);
      }
      return;
    }
    const Factor tag = cls.tag == FactorClass::Tag::AffineOnly ? Factor::A : Factor::E;
    if (out_.empty()) {
      const PlaneMap merged = compose(pending_, map);
      pending_ = PlaneMap::identity(map.field());
      out_.push_back(Letter{tag, merged});
      return;
    }
    if (out_.back().factor == tag) {
      const PlaneMap merged = compose(out_.back().map, map);
      out_.pop_back();
      push(classify_factor(merged), merged);
      return;
    }
    out_.push_back(Letter{tag, map});
  }

  PlaneMap pending_;
  AltWord out_;
};

AltWord normalize(AltWord w) {
  if (w.size() < 2) return w;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    Split s = w[i].factor == Factor::E ? split_elementary(w[i].map) : split_affine(w[i].map);
    w[i].map = std::move(s.rep);
    w[i + 1].map = compose(s.residue, w[i + 1].map);
  }
  return w;
}

AltWord reduce(const AltWord& w, const Field& field) {
  Reducer r(field);
  for (const auto& l : w) r.push(l.factor, l.map);
  return normalize(r.finish());
}

const Field& field_of(const AltWord& a, const AltWord& b) {
  if (!a.empty()) return a.front().map.field();
  if (!b.empty()) return b.front().map.field();
  static const Field q = Field::rationals();
  return q;
}

}  // namespace

std::string to_string(Factor f) { return f == Factor::A ? "A" : "E"; }

Letter make_letter(Factor factor, const PlaneMap& map) {
  if (!in_factor(classify_factor(map), factor)) {
    throw InvalidWord("letter " + map.to_string() + " is not in factor " + to_string(factor));
  }
  return Letter{factor, map};
}

Letter auto_letter(const PlaneMap& map) {
  const FactorClass c = classify_factor(map);
  switch (c.tag) {
    case FactorClass::Tag::S:
    case FactorClass::Tag::AffineOnly: return Letter{Factor::A, map};
    case FactorClass::Tag::ElementaryOnly: return Letter{Factor::E, map};
    case FactorClass::Tag::General: break;
  }
  throw InvalidWord("map " + map.to_string() + " is neither affine nor elementary");
}

PlaneMap multiply_out(const AltWord& w, const Field& field) {
  if (w.empty()) return PlaneMap::identity(field);
  PlaneMap acc = w.back().map;
  for (std::size_t i = w.size() - 1; i-- > 0;) acc = compose(w[i].map, acc);
  return acc;
}

PlaneMap multiply_out(const AltWord& w) {
  if (w.empty()) return PlaneMap::identity(Field::rationals());
  return multiply_out(w, w.front().map.field());
}

AltWord canonicalize(const AltWord& w) { return reduce(w, field_of(w, w)); }

AltWord word_product(const AltWord& a, const AltWord& b) {
  AltWord joined = a;
  joined.insert(joined.end(), b.begin(), b.end());
  return reduce(joined, field_of(a, b));
}

Letter letter_inverse(const Letter& l) {
  return Letter{l.factor, l.factor == Factor::E ? invert_elementary(l.map) : invert_affine(l.map)};
}

AltWord word_inverse(const AltWord& w) {
  AltWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(letter_inverse(*it));
  return reduce(out, field_of(w, w));
}

bool coset_eq(const PlaneMap& h1, const PlaneMap& h2, Side side) {
  const PlaneMap inv = invert(h1);
  const PlaneMap d = side == Side::Left ? compose(inv, h2) : compose(h2, inv);
  return classify_factor(d).tag == FactorClass::Tag::S;
}

std::optional<FactorConjugate> conjugate_into_factor(const AltWord& w) {
  const Field& field = field_of(w, w);
  AltWord beta = canonicalize(w);
  AltWord eta;
  while (beta.size() > 1 && beta.front().factor == beta.back().factor) {
    const Letter h0 = beta.front();
    AltWord rotated(beta.begin() + 1, beta.end());
    rotated.push_back(h0);
    beta = reduce(rotated, field);
    AltWord next{letter_inverse(h0)};
    next.insert(next.end(), eta.begin(), eta.end());
    eta = reduce(next, field);
  }
  if (beta.size() > 1) return std::nullopt;
  const PlaneMap e = multiply_out(eta, field);
  const PlaneMap check = compose(invert(e), compose(multiply_out(beta, field), e));
  if (!(check == multiply_out(w, field))) throw InternalError("cyclic reduction witness failed to verify");
  return FactorConjugate{std::move(beta), std::move(eta)};
}

std::string to_string(const AltWord& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ", ";
    out += to_string(w[i].factor) + ":" + w[i].map.to_string();
  }
  return out + "]";
}

}  // namespace plaut
