#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "ffdioph/laurent.hpp"
#include "ffdioph/polymat.hpp"
#include "ffdioph/qnum.hpp"

namespace ffdioph {

/// Full-rank lattice in K~^d, given by generator columns over R scaled by a
/// common polynomial denominator: Lambda = (1/denom) * colspan_R(gens).
/// Generators may be redundant (cols >= d).
struct LatticeBasis {
  PolyMat gens;  // d x m over R
  Poly denom;    // nonzero

  long dim() const { return gens.rows(); }
  const FieldPtr& field() const { return gens.field(); }
};

/// Orthogonal (column-reduced) basis xi_1..xi_d with ||xi_i|| = lambda_i,
/// sorted nondecreasing, in the canonical Popov form; exact determinant.
struct ReducedLattice {
  PolyMat xi;    // d x d canonical basis over R
  Poly denom;
  std::vector<long> minima_exp;  // log_q lambda_i, ascending
  long det_exp = 0;              // log_q |det|
  /// Co-reduced lifts: preimages of xi columns under a tracked linear map
  /// (used by the Farey-lattice construction); empty when untracked.
  PolyMat lifts;
  bool has_lifts = false;
  /// Lifts of generator combinations that cancelled (kernel elements).
  std::vector<std::vector<Poly>> kernel_lifts;

  long dim() const { return xi.rows(); }
  QExp lambda(long i) const { return QExp::pow(minima_exp.at(i)); }
  QExp det() const { return QExp::pow(det_exp); }
  /// Norm of the lattice vector with coefficient vector c (orthogonality):
  /// max_i |c_i| * lambda_i.
  QExp vector_norm(const std::vector<Poly>& coeffs) const;
  /// The lattice vector sum_i coeffs[i] * xi_i as rational entries (num/denom).
  std::vector<Poly> combination_numerator(const std::vector<Poly>& coeffs) const;
};

/// Exact column reduction; throws on rank-deficient input.
/// `track` columns (if given) receive the same column operations.
ReducedLattice column_reduce(const LatticeBasis& basis,
                             const PolyMat* track = nullptr);

std::vector<QExp> successive_minima(const ReducedLattice& rl);
QExp lattice_determinant(const ReducedLattice& rl);

/// #(Lambda cap B(0,r)) = prod ceil(q r / lambda_i); exact.
mpz_class count_points_in_ball(const ReducedLattice& rl, const QExp& r);

/// Covering radius e(Lambda) = lambda_d / q^2.
QExp covering_radius(const ReducedLattice& rl);

/// e(L + H') for H' the span of xi_1..xi_{d-1}, computed through the
/// 1-dimensional quotient along xi_d on the original generators; equals
/// lambda_d / q^2.  Requires d >= 2.
QExp covering_radius_plus_hyperplane(const LatticeBasis& basis);

struct ShortestVector {
  std::vector<Poly> coeffs;  // in terms of the input generators
  std::vector<Poly> numerator;  // vector entries * denom
  QExp norm;
};

/// Test oracle: exhaustive search over coefficient vectors with
/// deg c_i <= coeff_degree_bound; returns a nonzero vector of minimal norm
/// in that window.  Throws if the window contains no nonzero vector.
ShortestVector brute_force_shortest(const LatticeBasis& basis,
                                    long coeff_degree_bound);

/// Test oracle: exhaustive point count in B(0,r).  The coefficient window is
/// derived from Cramer bounds on the (square) generator matrix, so the count
/// is complete.  Exponential; intended for small instances only.
mpz_class brute_force_count_in_ball(const LatticeBasis& basis, const QExp& r);

/// Independent point-counting oracle in polynomial time: membership of a
/// lattice vector in B(0,r) is a linear condition on the F_q coefficients of
/// its generator combination inside the Cramer window, so the count is
/// q^(nullity) of an explicit F_q linear system.  Square bases only.
mpz_class count_points_in_ball_linear(const LatticeBasis& basis, const QExp& r);

/// λ_1 located by scanning norm classes with the linear counting oracle:
/// the smallest q^e whose closed ball holds more than the zero point.
QExp oracle_lambda1_by_counting(const LatticeBasis& basis);

/// Entries of the lattice vector gens*c/denom as an LVec (exact rationals).
LVec lattice_vector(const LatticeBasis& basis, const std::vector<Poly>& coeffs,
                    long prec);

}  // namespace ffdioph
