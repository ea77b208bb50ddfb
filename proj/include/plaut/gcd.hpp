#pragma once

#include "plaut/mpoly.hpp"
#include "plaut/upoly.hpp"

namespace plaut {

/// Greatest common divisor of two polynomials in x, y, computed by a
/// primitive polynomial remainder sequence in K[y][x]. The result is
/// normalized to be monic with respect to lex order x > y, so equal ideals
/// give syntactically equal results. gcd(f, 0) is the normalized f and
/// gcd(0, 0) = 0.
MPoly gcd_bivariate(const MPoly& f, const MPoly& g);

/// f scaled to be monic under lex order x > y (zero stays zero).
MPoly normalize_monic(const MPoly& f);

/// Exact quotient f / g of bivariate polynomials; throws InternalError if g
/// does not divide f.
MPoly divide_exact(const MPoly& f, const MPoly& g);

/// Res_x(f, g) as a polynomial in y. Requires deg_x f + deg_x g > 0.
UPoly resultant_x(const MPoly& f, const MPoly& g);

/// Square-free part of a nonzero bivariate polynomial (up to a unit). In
/// positive characteristic, factors that are p-th powers are left as is.
MPoly squarefree_part(const MPoly& f);

}  // namespace plaut
