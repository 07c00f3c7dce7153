#include "ffdioph/qnum.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace ffdioph {

mpq_class mpq_pow(const mpq_class& r, long e) {
  if (r == 0) {
    if (e <= 0) throw std::domain_error("mpq_pow: 0 to nonpositive power");
    return 0;
  }
  mpz_class num = r.get_num(), den = r.get_den();
  if (e < 0) {
    std::swap(num, den);
    e = -e;
  }
  mpz_class pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(e));
  mpq_class out(pn, pd);
  out.canonicalize();
  return out;
}

mpq_class QExp::to_mpq(unsigned q) const {
  if (zero_) return 0;
  return mpq_pow(mpq_class(static_cast<long>(q)), int_exponent());
}

int compare_qpow_vs_rpow(unsigned q, const mpq_class& a, const mpq_class& r,
                         const mpq_class& b) {
  if (r <= 0) throw std::domain_error("compare_qpow_vs_rpow: r must be positive");
  // q^a vs r^b  <=>  q^(a*L) vs r^(b*L) with L = lcm of denominators.
  mpz_class L;
  mpz_lcm(L.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
  mpq_class aL = a * mpq_class(L), bL = b * mpq_class(L);
  long ai = static_cast<long>(aL.get_num().get_si());
  long bi = static_cast<long>(bL.get_num().get_si());
  mpq_class lhs = mpq_pow(mpq_class(static_cast<long>(q)), ai);
  mpq_class rhs = mpq_pow(r, bi);
  return cmp(lhs, rhs);
}

int QExp::compare_rational(unsigned q, const mpq_class& r) const {
  if (zero_) return r > 0 ? -1 : (r == 0 ? 0 : 1);
  if (r <= 0) return 1;
  return compare_qpow_vs_rpow(q, e_, r, 1);
}

std::string QExp::str(unsigned q) const {
  if (zero_) return "0";
  return "q^" + e_.get_str() + " (q=" + std::to_string(q) + ")";
}

void QSum::add_term(const mpq_class& coeff, const mpq_class& exponent) {
  if (coeff == 0) return;
  mpq_class e = exponent;
  e.canonicalize();
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void QSum::add_term_base_q(const mpq_class& coeff, const mpq_class& e_q,
                           unsigned k) {
  add_term(coeff, e_q * static_cast<long>(k));
}

QSum& QSum::operator+=(const QSum& o) {
  if (p_ != o.p_) throw std::logic_error("QSum: mixed bases");
  for (const auto& [e, c] : o.terms_) add_term(c, e);
  return *this;
}

QSum& QSum::operator-=(const QSum& o) {
  if (p_ != o.p_) throw std::logic_error("QSum: mixed bases");
  for (const auto& [e, c] : o.terms_) add_term(-c, e);
  return *this;
}

QSum QSum::operator*(const QSum& o) const {
  if (p_ != o.p_) throw std::logic_error("QSum: mixed bases");
  QSum out(p_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) out.add_term(c1 * c2, e1 + e2);
  return out;
}

QSum& QSum::scale(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

namespace {

// floor(p^j * 2^(B*D))^(1/D): dyadic lower endpoint of p^(j/D) at B bits.
mpz_class root_floor(unsigned p, unsigned long j, unsigned long D,
                     unsigned long B) {
  mpz_class t;
  mpz_ui_pow_ui(t.get_mpz_t(), p, j);
  mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), B * D);
  mpz_class r;
  mpz_root(r.get_mpz_t(), t.get_mpz_t(), D);
  return r;
}

}  // namespace

int QSum::sign() const {
  if (terms_.empty()) return 0;
  // Common denominator D of the exponents.
  mpz_class D(1);
  for (const auto& [e, c] : terms_)
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), e.get_den().get_mpz_t());
  unsigned long Dl = D.get_ui();

  // Group terms: c * p^(m/D) = (c * p^floor(m/D)) * p^(j/D), j = m mod D.
  std::map<unsigned long, mpq_class> groups;
  for (const auto& [e, c] : terms_) {
    mpq_class scaled = e * mpq_class(D);
    mpz_class m = scaled.get_num();  // denominator is 1 after scaling
    mpz_class fq, fr;
    mpz_fdiv_qr(fq.get_mpz_t(), fr.get_mpz_t(), m.get_mpz_t(),
                D.get_mpz_t());
    long ip = static_cast<long>(fq.get_si());
    mpq_class coeff = c * mpq_pow(mpq_class(static_cast<long>(p_)), ip);
    unsigned long j = fr.get_ui();
    auto it = groups.find(j);
    if (it == groups.end())
      groups.emplace(j, coeff);
    else {
      it->second += coeff;
      if (it->second == 0) groups.erase(it);
    }
  }
  if (groups.empty()) return 0;
  if (groups.size() == 1 && groups.begin()->first == 0)
    return sgn(groups.begin()->second);

  // Nonzero by irreducibility of y^D - p; refine enclosures until resolved.
  for (unsigned long B = 32; B <= (1ul << 16); B *= 2) {
    mpq_class lo = 0, hi = 0;
    mpz_class two_B;
    mpz_ui_pow_ui(two_B.get_mpz_t(), 2, B);
    for (const auto& [j, c] : groups) {
      if (j == 0) {
        lo += c;
        hi += c;
        continue;
      }
      mpz_class f = root_floor(p_, j, Dl, B);
      mpq_class rlo(f, two_B), rhi(f + 1, two_B);
      rlo.canonicalize();
      rhi.canonicalize();
      if (c > 0) {
        lo += c * rlo;
        hi += c * rhi;
      } else {
        lo += c * rhi;
        hi += c * rlo;
      }
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
  throw std::logic_error("QSum::sign: enclosure did not resolve");
}

double QSum::approx() const {
  double s = 0;
  for (const auto& [e, c] : terms_)
    s += c.get_d() * std::pow(static_cast<double>(p_), e.get_d());
  return s;
}

}  // namespace ffdioph
