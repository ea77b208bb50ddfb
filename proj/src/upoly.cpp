#include "plaut/upoly.hpp"

#include <algorithm>

#include "plaut/errors.hpp"

namespace plaut {

UPoly::UPoly(const Field& field, std::vector<Scalar> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (!(c.field() == field_)) throw FieldMismatch("univariate coefficient in another field");
  }
  trim();
}

UPoly UPoly::constant(const Scalar& c) { return UPoly(c.field(), {c}); }

UPoly UPoly::monomial(const Scalar& c, std::size_t degree) {
  std::vector<Scalar> coeffs(degree + 1, Scalar::zero(c.field()));
  coeffs[degree] = c;
  return UPoly(c.field(), std::move(coeffs));
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Degree UPoly::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return static_cast<std::uint32_t>(coeffs_.size() - 1);
}

Scalar UPoly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Scalar::zero(field_);
}

const Scalar& UPoly::lc() const {
  if (coeffs_.empty()) throw DegenerateInput("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

UPoly UPoly::operator-() const {
  UPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  if (!(a.field_ == b.field_)) throw FieldMismatch("univariate fields differ");
  std::vector<Scalar> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar::zero(a.field_));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return UPoly(a.field_, std::move(out));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (!(a.field_ == b.field_)) throw FieldMismatch("univariate fields differ");
  if (a.is_zero() || b.is_zero()) return UPoly(a.field_);
  std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar::zero(a.field_));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j].add_product(a.coeffs_[i], b.coeffs_[j]);
    }
  }
  return UPoly(a.field_, std::move(out));
}

UPoly UPoly::scaled(const Scalar& c) const {
  std::vector<Scalar> out;
  out.reserve(coeffs_.size());
  for (const auto& v : coeffs_) out.push_back(v * c);
  return UPoly(field_, std::move(out));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lc().inverse());
}

UPoly UPoly::derivative() const {
  std::vector<Scalar> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    out.push_back(coeffs_[i] * Scalar::from_int(static_cast<long long>(i), field_));
  }
  return UPoly(field_, std::move(out));
}

Scalar UPoly::evaluate(const Scalar& at) const {
  Scalar acc = Scalar::zero(field_);
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc *= at;
    acc += coeffs_[i];
  }
  return acc;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  const Field& field = a.field();
  if (a.is_zero() || a.coeffs().size() < b.coeffs().size()) return {UPoly(field), a};
  std::vector<Scalar> rem = a.coeffs();
  const std::size_t db = b.coeffs().size() - 1;
  std::vector<Scalar> quot(rem.size() - db, Scalar::zero(field));
  const Scalar inv = b.lc().inverse();
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k].is_zero()) continue;
    const Scalar q = rem[k] * inv;
    quot[k - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= q * b.coeffs()[j];
  }
  return {UPoly(field, std::move(quot)), UPoly(field, std::move(rem))};
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InternalError("inexact univariate division");
  return q;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UPoly pow_mod(const UPoly& base, std::uint64_t exp, const UPoly& mod) {
  UPoly result = divmod(UPoly::constant(Scalar::one(base.field())), mod).second;
  UPoly b = divmod(base, mod).second;
  while (exp > 0) {
    if (exp & 1) result = divmod(result * b, mod).second;
    exp >>= 1;
    if (exp > 0) b = divmod(b * b, mod).second;
  }
  return result;
}

namespace {

void sort_unique(std::vector<Scalar>& v) {
  std::sort(v.begin(), v.end(), [](const Scalar& a, const Scalar& b) { return a.compare(b) < 0; });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

constexpr std::uint64_t kBruteForceOrder = 4096;

// Equal-degree splitting of a monic product of distinct linear factors.
void split_linear(const UPoly& g, std::vector<Scalar>& out) {
  const Degree d = g.degree();
  if (!d || *d == 0) return;
  if (*d == 1) {
    out.push_back(-g.coeff(0) / g.coeff(1));
    return;
  }
  const Field& field = g.field();
  const std::uint64_t q = field.order();
  const UPoly one = UPoly::constant(Scalar::one(field));
  for (std::uint64_t i = 0; i < q; ++i) {
    const UPoly shifted(field, {Scalar::element(i, field), Scalar::one(field)});
    const UPoly h = gcd(g, pow_mod(shifted, (q - 1) / 2, g) - one);
    const Degree dh = h.degree();
    if (dh && *dh > 0 && *dh < *d) {
      split_linear(h, out);
      split_linear(exact_div(g, h), out);
      return;
    }
  }
  throw InternalError("root splitting did not converge");
}

std::vector<mpz_class> divisors(const mpz_class& n, bool& complete) {
  // Trial division up to 10^6; the cofactor must then be 1 or prime.
  std::vector<std::pair<mpz_class, unsigned>> factors;
  mpz_class m = abs(n);
  for (unsigned long d = 2; d <= 1000000 && mpz_class(d) * d <= m; ++d) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      unsigned k = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
        ++k;
      }
      factors.emplace_back(mpz_class(d), k);
    }
  }
  if (m > 1) {
    if (mpz_probab_prime_p(m.get_mpz_t(), 30) == 0) {
      complete = false;
      return {};
    }
    factors.emplace_back(m, 1);
  }
  std::vector<mpz_class> divs{1};
  for (const auto& [p, k] : factors) {
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (unsigned e = 1; e <= k; ++e) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
    if (divs.size() > 100000) {
      complete = false;
      return {};
    }
  }
  return divs;
}

RootSearch rational_roots(const UPoly& f) {
  RootSearch result;
  // Integer coefficients: multiply through by the lcm of denominators.
  mpz_class lcm = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : f.coeffs()) ints.push_back(mpz_class(c.rational() * lcm));
  std::size_t low = 0;
  while (low < ints.size() && ints[low] == 0) ++low;
  if (low > 0) result.roots.push_back(Scalar::zero(f.field()));
  ints.erase(ints.begin(), ints.begin() + static_cast<std::ptrdiff_t>(low));
  if (ints.size() <= 1) return result;
  const auto nums = divisors(ints.front(), result.complete);
  const auto dens = divisors(ints.back(), result.complete);
  if (!result.complete) return result;
  const std::size_t n = ints.size() - 1;
  for (const auto& q : dens) {
    for (const auto& p : nums) {
      if (gcd(p, q) != 1) continue;
      for (int sign : {1, -1}) {
        const mpz_class num = sign * p;
        // sum a_i num^i q^(n-i) == 0
        mpz_class acc = 0;
        mpz_class qpow = 1;
        std::vector<mpz_class> qp(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
          qp[i] = qpow;
          qpow *= q;
        }
        mpz_class npow = 1;
        for (std::size_t i = 0; i <= n; ++i) {
          acc += ints[i] * npow * qp[n - i];
          npow *= num;
        }
        if (acc == 0) result.roots.push_back(Scalar::from_rational(mpq_class(num, q), f.field()));
      }
    }
  }
  sort_unique(result.roots);
  return result;
}

}  // namespace

RootSearch find_roots(const UPoly& f) {
  RootSearch result;
  if (f.is_zero()) throw DegenerateInput("the zero polynomial has every element as a root");
  if (f.is_constant()) return result;
  const Field& field = f.field();
  if (field.is_rational()) return rational_roots(f);
  const std::uint64_t q = field.order();
  if (q <= kBruteForceOrder || field.characteristic() == 2) {
    for (std::uint64_t i = 0; i < q; ++i) {
      const Scalar s = Scalar::element(i, field);
      if (f.evaluate(s).is_zero()) result.roots.push_back(s);
    }
    sort_unique(result.roots);
    return result;
  }
  const UPoly m = f.monic();
  const UPoly x(field, {Scalar::zero(field), Scalar::one(field)});
  const UPoly g = gcd(m, pow_mod(x, q, m) - x);
  split_linear(g, result.roots);
  sort_unique(result.roots);
  return result;
}

UPoly to_upoly(const MPoly& f, std::size_t var) {
  std::vector<Scalar> coeffs;
  for (const auto& t : f.terms()) {
    for (std::size_t i = 0; i < f.arity(); ++i) {
      if (i != var && t.exps[i] != 0) throw ArityMismatch("polynomial is not univariate");
    }
    const std::size_t e = t.exps[var];
    if (coeffs.size() <= e) coeffs.resize(e + 1, Scalar::zero(f.field()));
    coeffs[e] = t.coef;
  }
  return UPoly(f.field(), std::move(coeffs));
}

MPoly to_mpoly(const UPoly& f, std::size_t var, const VarList& vars) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i].is_zero()) continue;
    Exponents e{};
    e[var] = static_cast<std::uint16_t>(i);
    terms.push_back(Term{e, f.coeffs()[i]});
  }
  return MPoly::from_terms(f.field(), vars, std::move(terms));
}

}  // namespace plaut
