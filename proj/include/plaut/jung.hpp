#pragma once

#include "plaut/word.hpp"

namespace plaut {

/// Degree-reduction decomposition of a plane automorphism into its canonical
/// alternating word. Throws NotAnAutomorphism when the reduction gets stuck
/// and DegenerateInput for the zero map.
AltWord decompose(const PlaneMap& f);

/// Decision procedure: true iff `decompose` succeeds. Over Q a Jacobian that
/// is not a nonzero constant answers false without decomposing.
bool is_automorphism(const PlaneMap& f);

/// Compositional inverse via the reversed word of letter inverses.
PlaneMap invert(const PlaneMap& f);

}  // namespace plaut
