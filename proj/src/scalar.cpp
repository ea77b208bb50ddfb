#include "plaut/scalar.hpp"

#include <charconv>
#include <functional>

#include "plaut/errors.hpp"

namespace plaut {

namespace {

constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;

std::uint64_t least_nonresidue(std::uint64_t p) {
  if (p == 2) return 1;  // x^2 + x + 1 would be needed; handled separately
  for (std::uint64_t r = 2; r < p; ++r) {
    if (mod_pow(r, (p - 1) / 2, p) == p - 1) return r;
  }
  throw InternalError("no quadratic non-residue found");
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(text) + "'", 0,
                     "field_error");
  }
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::uint64_t>((__uint128_t)result * base % mod);
    base = static_cast<std::uint64_t>((__uint128_t)base * base % mod);
    exp >>= 1;
  }
  return result;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t mod) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(mod), new_r = static_cast<std::int64_t>(a % mod);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw DivisionByZero();
  if (t < 0) t += static_cast<std::int64_t>(mod);
  return static_cast<std::uint64_t>(t);
}

Field Field::prime(std::uint64_t p) {
  if (p > kMaxPrime || !is_prime(p)) {
    throw ParseError("modulus " + std::to_string(p) + " is not a prime below 2^31", 0,
                     "field_error");
  }
  return Field(Kind::Prime, p, 0);
}

Field Field::prime_square(std::uint64_t p) {
  if (p > kMaxPrime || !is_prime(p) || p == 2) {
    throw ParseError("F_{p^2} requires an odd prime below 2^31, got " + std::to_string(p), 0,
                     "field_error");
  }
  return Field(Kind::PrimeSquare, p, least_nonresidue(p));
}

Field Field::parse(std::string_view spec) {
  if (spec == "q" || spec == "Q") return rationals();
  if (spec.starts_with("fp2:")) return prime_square(parse_u64(spec.substr(4), "prime"));
  if (spec.starts_with("fp:")) return prime(parse_u64(spec.substr(3), "prime"));
  throw ParseError("unknown field '" + std::string(spec) + "' (expected q or fp:<prime>)", 0,
                   "field_error");
}

std::uint64_t Field::order() const noexcept {
  switch (kind_) {
    case Kind::Rational: return 0;
    case Kind::Prime: return p_;
    case Kind::PrimeSquare: return p_ * p_;
  }
  return 0;
}

Field Field::base() const {
  if (kind_ == Kind::PrimeSquare) return Field(Kind::Prime, p_, 0);
  return *this;
}

std::string Field::name() const {
  switch (kind_) {
    case Kind::Rational: return "q";
    case Kind::Prime: return "fp:" + std::to_string(p_);
    case Kind::PrimeSquare: return "fp2:" + std::to_string(p_);
  }
  return "?";
}

Scalar Scalar::zero(const Field& field) { return from_int(0, field); }
Scalar Scalar::one(const Field& field) { return from_int(1, field); }

Scalar Scalar::from_int(long long v, const Field& field) {
  if (field.is_rational()) return Scalar(field, mpq_class(static_cast<long>(v)));
  const auto p = static_cast<long long>(field.characteristic());
  long long r = v % p;
  if (r < 0) r += p;
  return Scalar(field, Residues{static_cast<std::uint64_t>(r), 0});
}

Scalar Scalar::from_mpz(const mpz_class& v, const Field& field) {
  if (field.is_rational()) return Scalar(field, mpq_class(v));
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), field.characteristic());
  return Scalar(field, Residues{r.get_ui(), 0});
}

Scalar Scalar::from_rational(const mpq_class& v, const Field& field) {
  if (field.is_rational()) {
    mpq_class c = v;
    c.canonicalize();
    return Scalar(field, std::move(c));
  }
  Scalar num = from_mpz(v.get_num(), field);
  Scalar den = from_mpz(v.get_den(), field);
  return num / den;
}

Scalar Scalar::from_residues(std::uint64_t a, std::uint64_t b, const Field& field) {
  if (field.is_rational()) throw FieldMismatch("residues given for the rational field");
  const std::uint64_t p = field.characteristic();
  if (field.kind() == Field::Kind::Prime && b % p != 0) {
    throw FieldMismatch("extension component given for a prime field");
  }
  return Scalar(field, Residues{a % p, b % p});
}

Scalar Scalar::extension_generator(const Field& field) {
  if (field.kind() != Field::Kind::PrimeSquare) {
    throw FieldMismatch("the extension generator w exists only in fp2 fields");
  }
  return Scalar(field, Residues{0, 1});
}

Scalar Scalar::element(std::uint64_t index, const Field& field) {
  if (!field.is_finite()) throw FieldMismatch("cannot enumerate an infinite field");
  const std::uint64_t p = field.characteristic();
  return Scalar(field, Residues{index % p, (index / p) % p});
}

bool Scalar::is_zero() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
  const auto& r = std::get<Residues>(value_);
  return r[0] == 0 && r[1] == 0;
}

bool Scalar::is_one() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return *q == 1;
  const auto& r = std::get<Residues>(value_);
  return r[0] == 1 % field_.characteristic() && r[1] == 0;
}

bool Scalar::in_base_field() const {
  if (field_.kind() != Field::Kind::PrimeSquare) return true;
  return std::get<Residues>(value_)[1] == 0;
}

std::uint64_t Scalar::index() const {
  const auto& r = std::get<Residues>(value_);
  return r[0] + r[1] * field_.characteristic();
}

void Scalar::check_same_field(const Scalar& rhs) const {
  if (!(field_ == rhs.field_)) {
    throw FieldMismatch("scalar fields differ: " + field_.name() + " vs " + rhs.field_.name());
  }
}

Scalar Scalar::operator-() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return Scalar(field_, mpq_class(-*q));
  const auto& r = std::get<Residues>(value_);
  const std::uint64_t p = field_.characteristic();
  return Scalar(field_, Residues{r[0] == 0 ? 0 : p - r[0], r[1] == 0 ? 0 : p - r[1]});
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q += std::get<mpq_class>(rhs.value_);
    return *this;
  }
  auto& r = std::get<Residues>(value_);
  const auto& s = std::get<Residues>(rhs.value_);
  const std::uint64_t p = field_.characteristic();
  r[0] = (r[0] + s[0]) % p;
  r[1] = (r[1] + s[1]) % p;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q -= std::get<mpq_class>(rhs.value_);
    return *this;
  }
  auto& r = std::get<Residues>(value_);
  const auto& s = std::get<Residues>(rhs.value_);
  const std::uint64_t p = field_.characteristic();
  r[0] = (r[0] + p - s[0]) % p;
  r[1] = (r[1] + p - s[1]) % p;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q *= std::get<mpq_class>(rhs.value_);
    return *this;
  }
  auto& r = std::get<Residues>(value_);
  const auto& s = std::get<Residues>(rhs.value_);
  const std::uint64_t p = field_.characteristic();
  if (field_.kind() == Field::Kind::Prime) {
    r[0] = r[0] * s[0] % p;
    return *this;
  }
  const std::uint64_t a = r[0], b = r[1], c = s[0], d = s[1];
  const std::uint64_t bd = b * d % p;
  r[0] = (a * c % p + bd * field_.nonresidue() % p) % p;
  r[1] = (a * d % p + b * c % p) % p;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same_field(rhs);
  return *this *= rhs.inverse();
}

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    a.check_same_field(b);
    check_same_field(a);
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), std::get<mpq_class>(a.value_).get_mpq_t(),
            std::get<mpq_class>(b.value_).get_mpq_t());
    *q += tmp;
    return;
  }
  if (field_.kind() == Field::Kind::Prime) {
    a.check_same_field(b);
    check_same_field(a);
    auto& r = std::get<Residues>(value_);
    const std::uint64_t p = field_.characteristic();
    r[0] = (r[0] + std::get<Residues>(a.value_)[0] * std::get<Residues>(b.value_)[0]) % p;
    return;
  }
  *this += a * b;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (auto* q = std::get_if<mpq_class>(&value_)) return Scalar(field_, mpq_class(1 / *q));
  const auto& r = std::get<Residues>(value_);
  const std::uint64_t p = field_.characteristic();
  if (field_.kind() == Field::Kind::Prime) return Scalar(field_, Residues{mod_inverse(r[0], p), 0});
  // (a + b w)^{-1} = (a - b w) / (a^2 - r b^2)
  const std::uint64_t norm =
      (r[0] * r[0] % p + p - field_.nonresidue() * (r[1] * r[1] % p) % p) % p;
  const std::uint64_t inv = mod_inverse(norm, p);
  return Scalar(field_, Residues{r[0] * inv % p, (p - r[1]) % p * inv % p});
}

Scalar Scalar::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result = one(field_);
  Scalar base = *this;
  auto n = static_cast<std::uint64_t>(e);
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

std::optional<Scalar> Scalar::sqrt() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    if (sgn(*q) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q->get_num_mpz_t()) || !mpz_perfect_square_p(q->get_den_mpz_t())) {
      return std::nullopt;
    }
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q->get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q->get_den_mpz_t());
    return Scalar(field_, mpq_class(n, d));
  }
  if (is_zero()) return *this;
  const std::uint64_t order = field_.order();
  if (field_.characteristic() == 2) return pow(static_cast<std::int64_t>(order / 2));
  const Scalar one_ = one(field_);
  const Scalar minus_one = -one_;
  if (!(pow(static_cast<std::int64_t>((order - 1) / 2)) == one_)) return std::nullopt;
  // Tonelli-Shanks over the cyclic group of order q - 1.
  std::uint64_t q = order - 1;
  std::uint64_t s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Scalar z = one_;
  for (std::uint64_t i = 1; i < order; ++i) {
    z = element(i, field_);
    if (z.pow(static_cast<std::int64_t>((order - 1) / 2)) == minus_one) break;
  }
  std::uint64_t m = s;
  Scalar c = z.pow(static_cast<std::int64_t>(q));
  Scalar t = pow(static_cast<std::int64_t>(q));
  Scalar r = pow(static_cast<std::int64_t>((q + 1) / 2));
  while (!(t == one_)) {
    std::uint64_t i = 0;
    Scalar t2 = t;
    while (!(t2 == one_)) {
      t2 *= t2;
      ++i;
    }
    Scalar b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b *= b;
    m = i;
    c = b * b;
    t *= c;
    r *= b;
  }
  return r;
}

Scalar Scalar::lift(const Field& target) const {
  if (field_ == target) return *this;
  if (field_.kind() == Field::Kind::Prime && target.kind() == Field::Kind::PrimeSquare &&
      field_.characteristic() == target.characteristic()) {
    return Scalar(target, Residues{residue(), 0});
  }
  if (field_.is_rational() && target.is_finite()) return from_rational(rational(), target);
  throw FieldMismatch("cannot embed " + field_.name() + " into " + target.name());
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  return a.value_ == b.value_;
}

std::strong_ordering Scalar::compare(const Scalar& other) const {
  check_same_field(other);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    const int c = cmp(*q, std::get<mpq_class>(other.value_));
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return std::get<Residues>(value_) <=> std::get<Residues>(other.value_);
}

namespace {

std::string symmetric_residue(std::uint64_t v, std::uint64_t p) {
  if (v <= p / 2) return std::to_string(v);
  return "-" + std::to_string(p - v);
}

}  // namespace

std::string Scalar::to_string() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
  const auto& r = std::get<Residues>(value_);
  const std::uint64_t p = field_.characteristic();
  if (r[1] == 0) return symmetric_residue(r[0], p);
  std::string w_part;
  if (r[1] == 1) {
    w_part = "w";
  } else if (r[1] == p - 1) {
    w_part = "-w";
  } else {
    w_part = symmetric_residue(r[1], p) + "*w";
  }
  if (r[0] == 0) return w_part;
  if (w_part.front() == '-') return symmetric_residue(r[0], p) + " - " + w_part.substr(1);
  return symmetric_residue(r[0], p) + " + " + w_part;
}

bool Scalar::is_compound() const {
  if (std::holds_alternative<mpq_class>(value_)) return false;
  const auto& r = std::get<Residues>(value_);
  return r[0] != 0 && r[1] != 0;
}

std::size_t Scalar::hash() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    return std::hash<std::string>{}(q->get_str());
  }
  const auto& r = std::get<Residues>(value_);
  return std::hash<std::uint64_t>{}(r[0] * 0x9E3779B97F4A7C15ULL ^ r[1]);
}

}  // namespace plaut
