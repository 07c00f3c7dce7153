#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ffdioph {

/// d^2/(d+1), exact.  Requires d >= 2.
mpq_class base_dim(long d);

/// d^2/(d+1) + d/(d+1) log_q(1 + sqrt((q-1)^2 (q+1)^d q^{2d} eps^d)),
/// evaluated in 256-bit precision, reported as double (tolerance 1e-12).
double upper_bound_dim(unsigned q, long d, const mpq_class& eps);

/// d^2/(d+1) + d/(d+1) log_q(1 + (q-1)^2/q^{2d+d^2/(d-1)}
///   ((q-1)/q - eps^{d-1}) eps^d).  Requires 0 < eps < ((q-1)/q)^{1/(d-1)}.
double lower_bound_dim(unsigned q, long d, const mpq_class& eps);

/// Exact region predicates (logarithms cleared).
bool lower_bound_in_monotone_region(unsigned q, long d, const mpq_class& eps);
bool upper_bound_nontrivial(unsigned q, long d, const mpq_class& eps);

struct Regions {
  // lower-monotone edge: eps^(d-1) = d(q-1)/((2d-1)q), reported as a
  // (base, exponent) pair: eps = base^(1/(d-1)).
  mpq_class lower_edge_base;
  long lower_edge_root;      // d-1
  mpq_class upper_edge;      // (q+1)^{-1} q^{-2}, exact
};
Regions regions(unsigned q, long d);

struct BoundRow {
  mpq_class eps;
  mpq_class base;
  double lower, upper;
  bool lower_monotone, upper_nontrivial;
};

std::vector<BoundRow> bounds_table(unsigned q, long d,
                                   const std::vector<mpq_class>& eps_grid);

/// CSV with header q,d,eps,base,lower,upper,lower_monotone,upper_nontrivial.
std::string bounds_table_csv(unsigned q, long d,
                             const std::vector<mpq_class>& eps_grid);

}  // namespace ffdioph
