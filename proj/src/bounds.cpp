#include "ffdioph/bounds.hpp"

#include <mpfr.h>

#include <cstdio>
#include <stdexcept>

#include "ffdioph/qnum.hpp"

namespace ffdioph {

namespace {

constexpr mpfr_prec_t kPrec = 256;

// sqrt of an exact rational at 256 bits, returned on top of the formula.
double dim_formula_sqrt(unsigned q, long d, const mpq_class& inner_sq) {
  mpfr_t x, lq, out;
  mpfr_init2(x, kPrec);
  mpfr_init2(lq, kPrec);
  mpfr_init2(out, kPrec);
  mpfr_set_q(x, inner_sq.get_mpq_t(), MPFR_RNDN);
  mpfr_sqrt(x, x, MPFR_RNDN);
  mpfr_add_ui(x, x, 1, MPFR_RNDN);
  mpfr_log(x, x, MPFR_RNDN);
  mpfr_set_ui(lq, q, MPFR_RNDN);
  mpfr_log(lq, lq, MPFR_RNDN);
  mpfr_div(x, x, lq, MPFR_RNDN);
  mpfr_mul_si(x, x, d, MPFR_RNDN);
  mpfr_div_si(x, x, d + 1, MPFR_RNDN);
  mpq_class base(static_cast<long>(d) * d, d + 1);
  base.canonicalize();
  mpfr_set_q(out, base.get_mpq_t(), MPFR_RNDN);
  mpfr_add(out, out, x, MPFR_RNDN);
  double v = mpfr_get_d(out, MPFR_RNDN);
  mpfr_clears(x, lq, out, (mpfr_ptr) nullptr);
  return v;
}

mpq_class rq(long num, long den = 1) {
  mpq_class v(num, den);
  v.canonicalize();
  return v;
}

}  // namespace

mpq_class base_dim(long d) {
  if (d < 2) throw std::invalid_argument("base_dim: d >= 2");
  return rq(d * d, d + 1);
}

double upper_bound_dim(unsigned q, long d, const mpq_class& eps) {
  if (d < 2) throw std::invalid_argument("upper_bound_dim: d >= 2");
  if (eps <= 0) throw std::invalid_argument("upper_bound_dim: eps > 0");
  mpq_class inner_sq = mpq_pow(rq(q - 1), 2) * mpq_pow(rq(q + 1), d) *
                       mpq_pow(rq(q), 2 * d) * mpq_pow(eps, d);
  return dim_formula_sqrt(q, d, inner_sq);
}

double lower_bound_dim(unsigned q, long d, const mpq_class& eps) {
  if (d < 2) throw std::invalid_argument("lower_bound_dim: d >= 2");
  // validity: 0 < eps < ((q-1)/q)^{1/(d-1)}  <=>  eps^{d-1} < (q-1)/q.
  if (!(eps > 0) || mpq_pow(eps, d - 1) >= rq(q - 1, q))
    throw std::invalid_argument("lower_bound_dim: eps outside validity range");
  // (q-1)^2 / q^{2d + d^2/(d-1)}: the exponent is fractional unless (d-1)|d^2;
  // write q^{2d + d^2/(d-1)} = q^{E} * q^{r/(d-1)} and fold the root into the
  // 256-bit evaluation.
  mpq_class coeff = (rq(q - 1, q) - mpq_pow(eps, d - 1)) * mpq_pow(eps, d) *
                    mpq_pow(rq(q - 1), 2);
  // inner = coeff / q^{2d + d^2/(d-1)}
  mpfr_t x, e, lq, out;
  mpfr_init2(x, kPrec);
  mpfr_init2(e, kPrec);
  mpfr_init2(lq, kPrec);
  mpfr_init2(out, kPrec);
  mpfr_set_q(x, coeff.get_mpq_t(), MPFR_RNDN);
  mpq_class expo = rq(2 * d) + rq(d * d, d - 1);
  mpfr_set_q(e, expo.get_mpq_t(), MPFR_RNDN);
  mpfr_set_ui(lq, q, MPFR_RNDN);
  mpfr_log(lq, lq, MPFR_RNDN);
  mpfr_mul(e, e, lq, MPFR_RNDN);
  mpfr_neg(e, e, MPFR_RNDN);
  mpfr_exp(e, e, MPFR_RNDN);  // q^{-(2d + d^2/(d-1))}
  mpfr_mul(x, x, e, MPFR_RNDN);
  mpfr_add_ui(x, x, 1, MPFR_RNDN);
  mpfr_log(x, x, MPFR_RNDN);
  mpfr_div(x, x, lq, MPFR_RNDN);
  mpfr_mul_si(x, x, d, MPFR_RNDN);
  mpfr_div_si(x, x, d + 1, MPFR_RNDN);
  mpfr_set_q(out, base_dim(d).get_mpq_t(), MPFR_RNDN);
  mpfr_add(out, out, x, MPFR_RNDN);
  double v = mpfr_get_d(out, MPFR_RNDN);
  mpfr_clears(x, e, lq, out, (mpfr_ptr) nullptr);
  return v;
}

bool lower_bound_in_monotone_region(unsigned q, long d, const mpq_class& eps) {
  // increasing iff eps^{d-1} <= d(q-1)/((2d-1)q), exact
  return mpq_pow(eps, d - 1) <= rq(d * (q - 1), (2 * d - 1) * q);
}

bool upper_bound_nontrivial(unsigned q, long d, const mpq_class& eps) {
  // upper <= d iff eps <= (q+1)^{-1} q^{-2}, exact (log cleared)
  return eps <= rq(1, (q + 1) * q * q);
}

Regions regions(unsigned q, long d) {
  if (d < 2) throw std::invalid_argument("regions: d >= 2");
  Regions r;
  r.lower_edge_base = rq(d * (q - 1), (2 * d - 1) * q);
  r.lower_edge_root = d - 1;
  r.upper_edge = rq(1, (q + 1) * q * q);
  return r;
}

std::vector<BoundRow> bounds_table(unsigned q, long d,
                                   const std::vector<mpq_class>& eps_grid) {
  std::vector<BoundRow> out;
  for (const auto& eps : eps_grid) {
    BoundRow row;
    row.eps = eps;
    row.base = base_dim(d);
    row.upper = upper_bound_dim(q, d, eps);
    row.lower_monotone = lower_bound_in_monotone_region(q, d, eps);
    row.upper_nontrivial = upper_bound_nontrivial(q, d, eps);
    row.lower = mpq_pow(eps, d - 1) < rq(q - 1, q)
                    ? lower_bound_dim(q, d, eps)
                    : row.base.get_d();
    out.push_back(row);
  }
  return out;
}

std::string bounds_table_csv(unsigned q, long d,
                             const std::vector<mpq_class>& eps_grid) {
  std::string csv = "q,d,eps,base,lower,upper,lower_monotone,upper_nontrivial\n";
  for (const auto& row : bounds_table(q, d, eps_grid)) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%u,%ld,%s,%.12f,%.12f,%.12f,%d,%d\n", q, d,
                  row.eps.get_str().c_str(), row.base.get_d(), row.lower,
                  row.upper, row.lower_monotone ? 1 : 0,
                  row.upper_nontrivial ? 1 : 0);
    csv += buf;
  }
  return csv;
}

}  // namespace ffdioph
