#include "plaut/gcd.hpp"

#include "plaut/errors.hpp"

namespace plaut {

namespace {

// A bivariate polynomial as a polynomial in x with coefficients in K[y];
// index = x-degree, no trailing zero coefficients.
using RecPoly = std::vector<UPoly>;

struct XY {
  std::size_t x;
  std::size_t y;
};

XY xy_indices(const MPoly& f) {
  const XY idx{f.var_index("x"), f.var_index("y")};
  for (const auto& t : f.terms()) {
    for (std::size_t i = 0; i < f.arity(); ++i) {
      if (i != idx.x && i != idx.y && t.exps[i] != 0) {
        throw ArityMismatch("bivariate operation on a polynomial with parameter variables");
      }
    }
  }
  return idx;
}

void trim(RecPoly& r) {
  while (!r.empty() && r.back().is_zero()) r.pop_back();
}

RecPoly to_rec(const MPoly& f) {
  const XY idx = xy_indices(f);
  std::vector<std::vector<Scalar>> dense;
  for (const auto& t : f.terms()) {
    const std::size_t ex = t.exps[idx.x], ey = t.exps[idx.y];
    if (dense.size() <= ex) dense.resize(ex + 1);
    if (dense[ex].size() <= ey) dense[ex].resize(ey + 1, Scalar::zero(f.field()));
    dense[ex][ey] = t.coef;
  }
  RecPoly out;
  for (auto& c : dense) out.emplace_back(f.field(), std::move(c));
  trim(out);
  return out;
}

MPoly from_rec(const RecPoly& r, const MPoly& like) {
  const XY idx{like.var_index("x"), like.var_index("y")};
  std::vector<Term> terms;
  for (std::size_t ex = 0; ex < r.size(); ++ex) {
    const auto& c = r[ex].coeffs();
    for (std::size_t ey = 0; ey < c.size(); ++ey) {
      if (c[ey].is_zero()) continue;
      Exponents e{};
      e[idx.x] = static_cast<std::uint16_t>(ex);
      e[idx.y] = static_cast<std::uint16_t>(ey);
      terms.push_back(Term{e, c[ey]});
    }
  }
  return MPoly::from_terms(like.field(), like.vars(), std::move(terms));
}

UPoly content(const RecPoly& r, const Field& field) {
  UPoly c(field);
  for (const auto& coeff : r) {
    c = gcd(c, coeff);
    if (c.is_constant() && !c.is_zero()) break;
  }
  return c;
}

RecPoly primitive_part(const RecPoly& r, const Field& field) {
  if (r.empty()) return r;
  const UPoly c = content(r, field);
  RecPoly out;
  out.reserve(r.size());
  for (const auto& coeff : r) out.push_back(exact_div(coeff, c));
  return out;
}

RecPoly pseudo_remainder(RecPoly a, const RecPoly& b) {
  const UPoly& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const UPoly la = a.back();
    for (auto& c : a) c = c * lb;
    for (std::size_t j = 0; j < b.size(); ++j) a[j + shift] = a[j + shift] - la * b[j];
    trim(a);
  }
  return a;
}

}  // namespace

MPoly normalize_monic(const MPoly& f) {
  if (f.is_zero()) return f;
  return f.scaled(f.leading_coefficient().inverse());
}

MPoly gcd_bivariate(const MPoly& f, const MPoly& g) {
  if (!(f.field() == g.field()) ) throw FieldMismatch("gcd across fields");
  if (f.vars() != g.vars()) throw ArityMismatch("gcd across ambients");
  const Field& field = f.field();
  RecPoly a = to_rec(f);
  RecPoly b = to_rec(g);
  if (a.empty()) return normalize_monic(g);
  if (b.empty()) return normalize_monic(f);
  const UPoly c = gcd(content(a, field), content(b, field));
  a = primitive_part(a, field);
  b = primitive_part(b, field);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    if (b.size() == 1) {
      a = RecPoly{UPoly::constant(Scalar::one(field))};
      break;
    }
    RecPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.empty() ? RecPoly{} : primitive_part(r, field);
  }
  for (auto& coeff : a) coeff = coeff * c;
  return normalize_monic(from_rec(a, f));
}

MPoly divide_exact(const MPoly& f, const MPoly& g) {
  if (g.is_zero()) throw DivisionByZero();
  MPoly quotient(f.field(), f.vars());
  MPoly rem = f;
  const Term& lt = g.terms().front();
  while (!rem.is_zero()) {
    const Term& r = rem.terms().front();
    Exponents e{};
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (r.exps[i] < lt.exps[i]) throw InternalError("inexact bivariate division");
      e[i] = static_cast<std::uint16_t>(r.exps[i] - lt.exps[i]);
    }
    const MPoly q = MPoly::monomial(e, r.coef / lt.coef, f.vars());
    quotient += q;
    rem -= q * g;
  }
  return quotient;
}

UPoly resultant_x(const MPoly& f, const MPoly& g) {
  const RecPoly a = to_rec(f);
  const RecPoly b = to_rec(g);
  const Field& field = f.field();
  if (a.empty() || b.empty()) return UPoly(field);
  const std::size_t m = a.size() - 1;
  const std::size_t n = b.size() - 1;
  const std::size_t size = m + n;
  if (size == 0) return UPoly::constant(Scalar::one(field));
  std::vector<std::vector<UPoly>> mat(size, std::vector<UPoly>(size, UPoly(field)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) mat[i][i + j] = a[m - j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) mat[n + i][i + j] = b[n - j];
  }
  // Fraction-free (Bareiss) elimination over K[y].
  UPoly prev = UPoly::constant(Scalar::one(field));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k].is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < size && mat[pivot][k].is_zero()) ++pivot;
      if (pivot == size) return UPoly(field);
      std::swap(mat[k], mat[pivot]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        mat[i][j] = exact_div(mat[k][k] * mat[i][j] - mat[i][k] * mat[k][j], prev);
      }
    }
    prev = mat[k][k];
  }
  UPoly det = mat[size - 1][size - 1];
  return negate ? -det : det;
}

MPoly squarefree_part(const MPoly& f) {
  if (f.is_zero()) throw DegenerateInput("square-free part of zero");
  const std::uint64_t p = f.field().characteristic();
  const Degree d = f.total_degree();
  if (p != 0 && d && *d >= p) return normalize_monic(f);
  const MPoly dx = f.derivative(f.var_index("x"));
  const MPoly dy = f.derivative(f.var_index("y"));
  const MPoly g = gcd_bivariate(f, gcd_bivariate(dx, dy));
  return normalize_monic(divide_exact(f, g));
}

}  // namespace plaut
