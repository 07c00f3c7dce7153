#include "ffdioph/sampling.hpp"

namespace ffdioph {

Poly random_poly(const FieldPtr& F, CounterRng& rng, long deg, bool monic) {
  if (deg < 0) return Poly::zero(F);
  std::vector<Fe> c(deg + 1);
  for (long i = 0; i < deg; ++i)
    c[i] = static_cast<Fe>(rng.next_below(F->q()));
  c[deg] = monic ? 1
                 : static_cast<Fe>(1 + rng.next_below(F->q() - 1));
  return Poly(F, std::move(c));
}

Poly random_poly_up_to(const FieldPtr& F, CounterRng& rng, long maxdeg) {
  // Degree chosen with the natural weight: uniform coefficient tuple.
  std::vector<Fe> c(maxdeg + 1);
  for (long i = 0; i <= maxdeg; ++i)
    c[i] = static_cast<Fe>(rng.next_below(F->q()));
  return Poly(F, std::move(c));
}

LatticeBasis random_lattice(const FieldPtr& F, CounterRng& rng, long d) {
  PolyMat m(F, d, d);
  // Diagonal exponents in [-2, 2]; negative powers become a shared x-power
  // denominator.
  std::vector<long> diag_shift(d, 0);
  long max_neg = 0;
  for (long i = 0; i < d; ++i) {
    long e = rng.next_in_range(-2, 2);
    diag_shift[i] = e;
    max_neg = std::min(max_neg, e);
  }
  long T = -max_neg;
  for (long i = 0; i < d; ++i)
    m.at(i, i) = Poly::xpow(F, diag_shift[i] + T);
  // Unimodular column and row mixes with small multipliers.
  long ops = 2 + static_cast<long>(rng.next_below(3));
  for (long t = 0; t < ops; ++t) {
    long i = static_cast<long>(rng.next_below(d));
    long j = static_cast<long>(rng.next_below(d));
    if (i == j) continue;
    Poly f = random_poly_up_to(F, rng, 2);
    if (rng.next_below(2) == 0) {
      m.axpy_col_poly(j, i, f);  // column op: same lattice basis change
    } else {
      for (long c = 0; c < d; ++c)  // row op: different, still full rank
        m.at(j, c) = m.at(j, c) + m.at(i, c) * f;
    }
  }
  return LatticeBasis{m, Poly::xpow(F, T)};
}

LatticeBasis apply_random_isometry(const LatticeBasis& basis, CounterRng& rng) {
  const FieldPtr& F = basis.field();
  long d = basis.dim();
  // Build N / x^T with entries of norm <= 1 and |det| = 1: a product of a
  // permutation and unipotent upper-triangular factors.
  PolyMat N = PolyMat::identity(F, d);
  long T = 0;
  long factors = 1 + static_cast<long>(rng.next_below(2));
  for (long t = 0; t < factors; ++t) {
    // permutation
    PolyMat P(F, d, d);
    std::vector<long> perm(d);
    for (long i = 0; i < d; ++i) perm[i] = i;
    for (long i = d - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.next_below(i + 1)]);
    for (long i = 0; i < d; ++i) P.at(perm[i], i) = Poly::one(F);
    // unipotent upper-triangular with entries h / x^{deg h + j}, j >= 0:
    // realized over the common denominator x^S.
    long S = 2;
    PolyMat U(F, d, d);
    for (long i = 0; i < d; ++i) U.at(i, i) = Poly::xpow(F, S);
    for (long i = 0; i < d; ++i)
      for (long j = i + 1; j < d; ++j) {
        Poly h = random_poly_up_to(F, rng, S);  // deg <= S: norm <= 1
        U.at(i, j) = h;
      }
    N = N * P * U;
    T += S;
  }
  LatticeBasis out;
  out.gens = N * basis.gens;
  out.denom = basis.denom * Poly::xpow(F, T);
  return out;
}

}  // namespace ffdioph
