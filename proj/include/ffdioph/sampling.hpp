#pragma once

#include "ffdioph/lattice.hpp"
#include "ffdioph/rng.hpp"

namespace ffdioph {

/// Random polynomial of degree exactly deg (monic optionally); deg < 0 gives 0.
Poly random_poly(const FieldPtr& F, CounterRng& rng, long deg, bool monic);

/// Random polynomial of degree <= maxdeg (may be zero).
Poly random_poly_up_to(const FieldPtr& F, CounterRng& rng, long maxdeg);

/// Random full-rank lattice: U * diag(x^{e_i}) * V with U, V products of
/// elementary column/row operations over R with small-degree multipliers,
/// diagonal exponents in [-2, 2], and a power-of-x denominator.
LatticeBasis random_lattice(const FieldPtr& F, CounterRng& rng, long d);

/// Isometry from SL_d(O): a product of permutation matrices and unipotent
/// upper-triangular matrices with entries of norm <= 1 (rational entries
/// h(x)/x^{deg h + j}), applied on the left.  Returns the transformed basis.
LatticeBasis apply_random_isometry(const LatticeBasis& basis, CounterRng& rng);

}  // namespace ffdioph
