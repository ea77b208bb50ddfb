#pragma once

#include <cstdint>
#include <random>

#include "plaut/scalar.hpp"

namespace plaut {

/// Uniform integer in [0, n) by rejection sampling; unlike the standard
/// distributions its output is identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

/// A random field element: uniform over a finite field, or a uniform integer
/// in [-bound, bound] over Q.
Scalar random_scalar(std::mt19937_64& rng, const Field& field, std::int64_t bound = 50);

/// As random_scalar, but never zero.
Scalar random_unit(std::mt19937_64& rng, const Field& field, std::int64_t bound = 50);

}  // namespace plaut
