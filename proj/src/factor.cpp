#include "ffdioph/factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffdioph {

Poly Factorization::reconstruct(const FieldPtr& F) const {
  Poly f = Poly::constant(F, unit);
  for (const auto& [P, e] : factors)
    for (unsigned i = 0; i < e; ++i) f = f * P;
  return f;
}

std::vector<Poly> monic_irreducibles(const FieldPtr& F, long degree) {
  if (degree < 1) return {};
  // Sieve: irreducible iff not divisible by any monic irreducible of
  // degree <= degree/2, built up recursively.
  std::vector<std::vector<Poly>> table;  // table[i] = irreducibles of degree i+1
  for (long d = 1; d <= degree; ++d) {
    std::vector<Poly> irr;
    for (const Poly& f : all_polys_of_degree(F, d, true)) {
      bool divisible = false;
      for (long dd = 1; !divisible && 2 * dd <= d; ++dd)
        for (const Poly& P : table[dd - 1])
          if ((f % P).is_zero()) {
            divisible = true;
            break;
          }
      if (!divisible) irr.push_back(f);
    }
    table.push_back(std::move(irr));
  }
  return table[degree - 1];
}

Factorization factorize(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("factorize: zero polynomial");
  if (f.degree() > 12)
    throw std::invalid_argument("factorize: degree above supported range");
  const FieldPtr& F = f.field();
  Factorization out;
  out.unit = f.leading();
  Poly work = f.monic();
  for (long dd = 1; 2 * dd <= work.degree(); ++dd) {
    for (const Poly& P : monic_irreducibles(F, dd)) {
      unsigned mult = 0;
      while (!work.is_zero() && work.degree() >= P.degree()) {
        auto [s, r] = divmod(work, P);
        if (!r.is_zero()) break;
        work = s;
        ++mult;
      }
      if (mult > 0) out.factors.emplace_back(P, mult);
      if (2 * dd > work.degree()) break;
    }
  }
  if (work.degree() >= 1) out.factors.emplace_back(work, 1);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

mpz_class euler_phi(const Poly& f) {
  if (f.is_zero() || f.degree() < 1)
    throw std::domain_error("euler_phi: requires deg f >= 1");
  const unsigned q = f.field()->q();
  mpz_class phi = 1;
  for (const auto& [P, e] : factorize(f).factors) {
    mpz_class Pabs, Ppow, Ppow1;
    mpz_ui_pow_ui(Pabs.get_mpz_t(), q, static_cast<unsigned long>(P.degree()));
    mpz_pow_ui(Ppow.get_mpz_t(), Pabs.get_mpz_t(), e);
    mpz_pow_ui(Ppow1.get_mpz_t(), Pabs.get_mpz_t(), e - 1);
    phi *= Ppow - Ppow1;
  }
  return phi;
}

mpz_class euler_phi_enumeration(const Poly& f) {
  if (f.is_zero() || f.degree() < 1)
    throw std::domain_error("euler_phi_enumeration: requires deg f >= 1");
  mpz_class count = 0;
  const FieldPtr& F = f.field();
  for (long d = 0; d < f.degree(); ++d) {
    PolyEnumerator en(F, d, false);
    Poly g;
    while (en.next(g))
      if (gcd(f, g).is_one()) ++count;
  }
  return count;
}

mpz_class divisor_sum_D1(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("divisor_sum_D1: zero polynomial");
  const unsigned q = f.field()->q();
  mpz_class s = 1;
  for (const auto& [P, e] : factorize(f).factors) {
    mpz_class Pabs, Ptop;
    mpz_ui_pow_ui(Pabs.get_mpz_t(), q, static_cast<unsigned long>(P.degree()));
    mpz_pow_ui(Ptop.get_mpz_t(), Pabs.get_mpz_t(), e + 1);
    s *= (Ptop - 1) / (Pabs - 1);
  }
  return s;
}

mpz_class divisor_sum_D1_enumeration(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("divisor_sum_D1_enumeration: zero");
  const FieldPtr& F = f.field();
  const unsigned q = F->q();
  mpz_class s = 1;  // divisor 1
  for (long d = 1; d <= f.degree(); ++d) {
    PolyEnumerator en(F, d, true);
    Poly g;
    while (en.next(g))
      if ((f % g).is_zero()) {
        mpz_class gabs;
        mpz_ui_pow_ui(gabs.get_mpz_t(), q, static_cast<unsigned long>(d));
        s += gabs;
      }
  }
  return s;
}

DegreeSumPhi sum_phi_over_degree(const FieldPtr& F, long l) {
  if (l < 1) throw std::invalid_argument("sum_phi_over_degree: l >= 1");
  DegreeSumPhi out;
  out.enumerated = 0;
  PolyEnumerator en(F, l, false);
  Poly f;
  while (en.next(f)) out.enumerated += euler_phi(f);
  const unsigned q = F->q();
  mpz_class qpow;
  mpz_ui_pow_ui(qpow.get_mpz_t(), q, static_cast<unsigned long>(2 * l - 1));
  out.closed_form = mpz_class(q - 1) * (q - 1) * qpow;
  return out;
}

DegreeSumPhiD1 sum_phiD1_over_degree(const FieldPtr& F, long l) {
  if (l < 1) throw std::invalid_argument("sum_phiD1_over_degree: l >= 1");
  DegreeSumPhiD1 out;
  out.enumerated = 0;
  PolyEnumerator en(F, l, false);
  Poly f;
  while (en.next(f)) out.enumerated += euler_phi(f) * divisor_sum_D1(f);
  const unsigned q = F->q();
  mpz_class qpow;
  mpz_ui_pow_ui(qpow.get_mpz_t(), q, static_cast<unsigned long>(3 * l));
  out.bound = mpz_class(q - 1) * qpow;
  return out;
}

}  // namespace ffdioph
