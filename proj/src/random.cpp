#include "plaut/random.hpp"

namespace plaut {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    const std::uint64_t v = rng();
    if (v < limit) return v % n;
  }
}

Scalar random_scalar(std::mt19937_64& rng, const Field& field, std::int64_t bound) {
  if (field.is_finite()) return Scalar::element(uniform_below(rng, field.order()), field);
  const auto span = static_cast<std::uint64_t>(2 * bound + 1);
  return Scalar::from_int(static_cast<long long>(uniform_below(rng, span)) - bound, field);
}

Scalar random_unit(std::mt19937_64& rng, const Field& field, std::int64_t bound) {
  for (;;) {
    Scalar s = random_scalar(rng, field, bound);
    if (!s.is_zero()) return s;
  }
}

}  // namespace plaut
