#pragma once

// Hand-rolled generators for property tests. Everything is driven by a
// seeded std::mt19937_64 through plaut::uniform_below, so failures replay.

#include <random>
#include <vector>

#include "plaut/family.hpp"
#include "plaut/plane_map.hpp"
#include "plaut/random.hpp"
#include "plaut/word.hpp"

namespace gen {

using namespace plaut;

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return uniform_below(rng, n); }

inline Scalar scalar(std::mt19937_64& rng, const Field& k, std::int64_t bound = 9) { return random_scalar(rng, k, bound); }
inline Scalar unit(std::mt19937_64& rng, const Field& k, std::int64_t bound = 9) { return random_unit(rng, k, bound); }

inline MPoly var(const char* name, const Field& k) { return MPoly::variable(name, k, xy_vars()); }
inline MPoly cst(const Scalar& c) { return MPoly::constant(c, xy_vars()); }

/// Univariate polynomial in y with degree exactly `deg` (deg >= 0).
inline MPoly poly_y(std::mt19937_64& rng, const Field& k, unsigned deg, std::int64_t bound = 9) {
  MPoly out(k, xy_vars());
  const MPoly y = var("y", k);
  for (unsigned i = 0; i <= deg; ++i) {
    const Scalar c = i == deg ? unit(rng, k, bound) : scalar(rng, k, bound);
    out += cst(c) * y.pow(i);
  }
  return out;
}

/// Arbitrary polynomial in x, y of total degree <= deg.
inline MPoly poly_xy(std::mt19937_64& rng, const Field& k, unsigned deg, std::int64_t bound = 9) {
  MPoly out(k, xy_vars());
  const MPoly x = var("x", k), y = var("y", k);
  for (unsigned i = 0; i <= deg; ++i) {
    for (unsigned j = 0; i + j <= deg; ++j) {
      if (below(rng, 2) == 0) out += cst(scalar(rng, k, bound)) * x.pow(i) * y.pow(j);
    }
  }
  return out;
}

/// (a x + P(y), b y + c) with deg P = deg exactly.
inline PlaneMap elementary(std::mt19937_64& rng, const Field& k, unsigned deg, std::int64_t bound = 9) {
  const MPoly x = var("x", k), y = var("y", k);
  return PlaneMap(cst(unit(rng, k, bound)) * x + poly_y(rng, k, deg, bound),
                  cst(unit(rng, k, bound)) * y + cst(scalar(rng, k, bound)));
}

/// A random element of S = A ∩ E.
inline PlaneMap triangular(std::mt19937_64& rng, const Field& k, std::int64_t bound = 9) {
  return elementary(rng, k, 1, bound);
}

/// Invertible affine map; `outside_s` forces a nonzero x-coefficient in the
/// second component.
inline PlaneMap affine(std::mt19937_64& rng, const Field& k, bool outside_s, std::int64_t bound = 9) {
  const MPoly x = var("x", k), y = var("y", k);
  for (;;) {
    const Scalar a = scalar(rng, k, bound), b = scalar(rng, k, bound);
    const Scalar c = outside_s ? unit(rng, k, bound) : scalar(rng, k, bound);
    const Scalar d = scalar(rng, k, bound);
    if ((a * d - b * c).is_zero()) continue;
    return PlaneMap(cst(a) * x + cst(b) * y + cst(scalar(rng, k, bound)),
                    cst(c) * x + cst(d) * y + cst(scalar(rng, k, bound)));
  }
}

/// A random alternating word of the given length: letters outside S, E
/// letters of degree in [2, max_deg], with S-noise s_{i-1}^-1 h_i s_i
/// shuffled between neighbours (the product is unchanged in spirit; the
/// word is not canonical).
inline AltWord word(std::mt19937_64& rng, const Field& k, std::size_t length, unsigned max_deg,
                    bool noise = true, std::int64_t bound = 9) {
  AltWord w;
  Factor f = below(rng, 2) == 0 ? Factor::A : Factor::E;
  for (std::size_t i = 0; i < length; ++i) {
    PlaneMap m = f == Factor::A ? affine(rng, k, true, bound)
                                : elementary(rng, k, 2 + static_cast<unsigned>(below(rng, max_deg - 1)), bound);
    w.push_back(Letter{f, m});
    f = f == Factor::A ? Factor::E : Factor::A;
  }
  if (noise) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const PlaneMap s = triangular(rng, k, bound);
      const PlaneMap s_inv = invert_elementary(s);
      w[i].map = compose(w[i].map, s);
      w[i + 1].map = compose(s_inv, w[i + 1].map);
    }
  }
  return w;
}

/// A specialization point avoiding nothing in particular.
inline std::vector<Scalar> point(std::mt19937_64& rng, const Field& k, std::size_t m, std::int64_t bound = 9) {
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(scalar(rng, k, bound));
  return out;
}

}  // namespace gen
