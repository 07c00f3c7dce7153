#pragma once

#include <gmpxx.h>

#include <vector>

#include "ffdioph/poly.hpp"

namespace ffdioph {

/// f = unit * prod(factors[i].first ^ factors[i].second), factors monic
/// irreducible, pairwise distinct, sorted by (degree, coefficient order).
struct Factorization {
  Fe unit = 1;
  std::vector<std::pair<Poly, unsigned>> factors;

  Poly reconstruct(const FieldPtr& F) const;
};

/// Monic irreducibles of exactly the given degree, in enumeration order.
std::vector<Poly> monic_irreducibles(const FieldPtr& F, long degree);

/// Deterministic trial-division factorization, supported for deg f <= 12.
Factorization factorize(const Poly& f);

/// Euler totient: #{g != 0 : deg g < deg f, gcd(f,g) = 1}, computed by the
/// closed form prod(|P_i|^{e_i} - |P_i|^{e_i-1}).  Requires deg f >= 1.
mpz_class euler_phi(const Poly& f);

/// Oracle: the same count by direct enumeration over g.
mpz_class euler_phi_enumeration(const Poly& f);

/// D_1(f) = sum of |g| over monic divisors g of f.  Requires f != 0.
mpz_class divisor_sum_D1(const Poly& f);

/// Oracle: direct enumeration over monic divisors.
mpz_class divisor_sum_D1_enumeration(const Poly& f);

struct DegreeSumPhi {
  mpz_class enumerated;   // sum of phi(f) over all f (not only monic) of degree l
  mpz_class closed_form;  // (q-1)^2/q * q^(2l)
};
DegreeSumPhi sum_phi_over_degree(const FieldPtr& F, long l);

struct DegreeSumPhiD1 {
  mpz_class enumerated;  // sum of phi(f) D_1(f) over deg f = l
  mpz_class bound;       // (q-1) q^(3l)
};
DegreeSumPhiD1 sum_phiD1_over_degree(const FieldPtr& F, long l);

}  // namespace ffdioph
