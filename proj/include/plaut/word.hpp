#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plaut/plane_map.hpp"

namespace plaut {

enum class Factor { A, E };

std::string to_string(Factor f);

struct Letter {
  Factor factor;
  PlaneMap map;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// An element of the amalgam E *_S A as a sequence of letters. Words built by
/// this module alternate between the factors and, from length 2 on, contain
/// no letter of S.
using AltWord = std::vector<Letter>;

/// Checks that the map belongs to the tagged factor (throws InvalidWord).
Letter make_letter(Factor factor, const PlaneMap& map);
/// Tags a map by its class; S maps are tagged A. Throws InvalidWord for maps
/// in neither factor.
Letter auto_letter(const PlaneMap& map);

/// h0 after h1 after ... ; the empty word is the identity over `field`.
PlaneMap multiply_out(const AltWord& w, const Field& field);
PlaneMap multiply_out(const AltWord& w);

/// Reduces an arbitrary sequence of A/E letters (S letters allowed anywhere)
/// to the canonical alternating word of the same element.
///
/// Canonical representatives: every letter but the last is normalized
/// inside its coset hS,
///   E-letters to (x + Q(y), y) with Q free of terms of degree <= 1,
///   A-letters to (m x + y, x),
/// and the S residue is pushed right into the last letter. A lone letter in
/// S is kept (tagged A); the identity becomes the empty word.
AltWord canonicalize(const AltWord& w);

AltWord word_product(const AltWord& a, const AltWord& b);
AltWord word_inverse(const AltWord& w);
Letter letter_inverse(const Letter& l);

enum class Side { Left, Right };

/// Left: h1^-1 h2 in S. Right: h2 h1^-1 in S. Throws NotAnAutomorphism.
bool coset_eq(const PlaneMap& h1, const PlaneMap& h2, Side side);

struct FactorConjugate {
  /// The empty word when the element is the identity.
  AltWord beta;
  AltWord conjugator;
};

/// Cyclic reduction of a canonical word: on success multiply_out(w) equals
/// eta^-1 beta eta with beta a single letter (or empty) and eta the
/// conjugator. nullopt when w is cyclically reduced of length >= 2.
std::optional<FactorConjugate> conjugate_into_factor(const AltWord& w);

std::string to_string(const AltWord& w);

}  // namespace plaut
