#include "ffdioph/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffdioph {

QExp ReducedLattice::vector_norm(const std::vector<Poly>& coeffs) const {
  if (static_cast<long>(coeffs.size()) != dim())
    throw std::invalid_argument("vector_norm: coefficient count mismatch");
  QExp n = QExp::zero();
  for (long i = 0; i < dim(); ++i) {
    if (coeffs[i].is_zero()) continue;
    n = max(n, QExp::pow(coeffs[i].degree() + minima_exp[i]));
  }
  return n;
}

std::vector<Poly> ReducedLattice::combination_numerator(
    const std::vector<Poly>& coeffs) const {
  if (static_cast<long>(coeffs.size()) != dim())
    throw std::invalid_argument("combination_numerator: size mismatch");
  const FieldPtr& F = xi.field();
  std::vector<Poly> out(dim(), Poly::zero(F));
  for (long r = 0; r < dim(); ++r)
    for (long c = 0; c < dim(); ++c)
      out[r] = out[r] + xi.at(r, c) * coeffs[c];
  return out;
}

ReducedLattice column_reduce(const LatticeBasis& basis, const PolyMat* track) {
  if (basis.denom.is_zero())
    throw std::invalid_argument("column_reduce: zero denominator");
  long d = basis.dim();
  if (basis.gens.cols() < d)
    throw std::invalid_argument("column_reduce: too few generators");
  ReductionResult rr = popov_reduce(basis.gens, track);
  if (rr.basis.cols() != d)
    throw std::invalid_argument("column_reduce: rank-deficient input");
  ReducedLattice out;
  out.xi = rr.basis;
  out.denom = basis.denom;
  out.lifts = rr.track;
  out.has_lifts = rr.tracked;
  out.kernel_lifts = rr.dropped_track;
  long ds = basis.denom.degree();
  for (long c = 0; c < d; ++c)
    out.minima_exp.push_back(out.xi.col_degree(c) - ds);
  // Determinant from an independent elimination on the reduced basis; for
  // square inputs this must agree with the input matrix determinant.
  Poly det_poly = bareiss_det(out.xi);
  if (det_poly.is_zero())
    throw std::logic_error("column_reduce: reduced basis is singular");
  out.det_exp = det_poly.degree() - d * ds;
  if (basis.gens.cols() == d) {
    Poly det_in = bareiss_det(basis.gens);
    if (det_in.degree() != det_poly.degree())
      throw std::logic_error("column_reduce: determinant drifted");
  }
  return out;
}

std::vector<QExp> successive_minima(const ReducedLattice& rl) {
  std::vector<QExp> out;
  for (long e : rl.minima_exp) out.push_back(QExp::pow(e));
  return out;
}

QExp lattice_determinant(const ReducedLattice& rl) { return rl.det(); }

mpz_class count_points_in_ball(const ReducedLattice& rl, const QExp& r) {
  if (r.is_zero()) throw std::invalid_argument("count_points_in_ball: r > 0");
  // ceil(q^t) = q^t for integer t >= 0, and 1 for t < 0.
  unsigned long total_exp = 0;
  const unsigned q = rl.xi.field()->q();
  for (long e : rl.minima_exp) {
    mpq_class t = r.exponent() + 1 - e;
    if (t.get_den() != 1)
      throw std::invalid_argument("count_points_in_ball: radius not in q^Z");
    long ti = static_cast<long>(t.get_num().get_si());
    if (ti > 0) total_exp += static_cast<unsigned long>(ti);
  }
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), q, total_exp);
  return out;
}

QExp covering_radius(const ReducedLattice& rl) {
  return QExp::pow(rl.minima_exp.back() - 2);
}

QExp covering_radius_plus_hyperplane(const LatticeBasis& basis) {
  long d = basis.dim();
  if (d < 2)
    throw std::invalid_argument("covering_radius_plus_hyperplane: d >= 2");
  ReducedLattice rl = column_reduce(basis);
  // Coordinates of the original generators in the xi basis, via Cramer on
  // the reduced matrix: xi * c = g  =>  c_d = det(xi with col d -> g)/det(xi).
  Poly det_xi = bareiss_det(rl.xi);
  const FieldPtr& F = basis.field();
  // Quotient along xi_d: the image of the lattice in K~^d / H' is the
  // fractional ideal generated by the c_d coordinates; its R-generator g0
  // satisfies |g0/det_xi| = 1 (the quotient of a lattice by its minimal
  // (d-1)-dim sublattice is generated by the xi_d class).
  std::vector<Poly> nums;
  for (long c = 0; c < basis.gens.cols(); ++c) {
    PolyMat m = rl.xi;
    for (long r = 0; r < d; ++r) m.at(r, d - 1) = basis.gens.at(r, c);
    Poly num = bareiss_det(m);
    if (!num.is_zero()) nums.push_back(num);
  }
  if (nums.empty())
    throw std::logic_error("covering_radius_plus_hyperplane: quotient trivial");
  Poly g0 = gcd_all(nums);
  long quot_gen_exp = g0.degree() - det_xi.degree();
  // e(quotient 1-dim lattice of generator norm t) = t/q^2, transported by
  // the quotient norm scale lambda_d.
  return QExp::pow(quot_gen_exp + rl.minima_exp.back() - 2);
}

namespace {

// Enumerate coefficient vectors c with deg c_i <= win[i] (win[i] < 0 forces
// c_i = 0), calling fn for each nonzero c.  Deterministic order.
void enumerate_coeff_vectors(const FieldPtr& F, const std::vector<long>& win,
                             const std::function<void(const std::vector<Poly>&)>& fn) {
  long m = static_cast<long>(win.size());
  std::vector<std::vector<Poly>> choices(m);
  for (long i = 0; i < m; ++i)
    choices[i] = win[i] < 0 ? std::vector<Poly>{Poly::zero(F)}
                            : all_polys_up_to_degree(F, win[i]);
  std::vector<size_t> idx(m, 0);
  std::vector<Poly> cur(m, Poly::zero(F));
  while (true) {
    for (long i = 0; i < m; ++i) cur[i] = choices[i][idx[i]];
    bool nonzero = false;
    for (const auto& f : cur)
      if (!f.is_zero()) nonzero = true;
    if (nonzero) fn(cur);
    long i = 0;
    while (i < m && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == m) break;
  }
}

QExp column_combo_norm(const LatticeBasis& basis, const std::vector<Poly>& c) {
  long d = basis.dim();
  const FieldPtr& F = basis.field();
  long maxdeg = -1;
  for (long r = 0; r < d; ++r) {
    Poly acc = Poly::zero(F);
    for (long j = 0; j < basis.gens.cols(); ++j)
      acc = acc + basis.gens.at(r, j) * c[j];
    maxdeg = std::max(maxdeg, acc.degree());
  }
  if (maxdeg < 0) return QExp::zero();
  return QExp::pow(maxdeg - basis.denom.degree());
}

}  // namespace

ShortestVector brute_force_shortest(const LatticeBasis& basis,
                                    long coeff_degree_bound) {
  const FieldPtr& F = basis.field();
  std::vector<long> win(basis.gens.cols(), coeff_degree_bound);
  std::optional<ShortestVector> best;
  enumerate_coeff_vectors(F, win, [&](const std::vector<Poly>& c) {
    QExp n = column_combo_norm(basis, c);
    if (n.is_zero()) return;  // redundant generators can cancel
    if (!best || n < best->norm) {
      ShortestVector sv;
      sv.coeffs = c;
      sv.norm = n;
      best = sv;
    }
  });
  if (!best)
    throw std::invalid_argument("brute_force_shortest: empty window");
  long d = basis.dim();
  best->numerator.assign(d, Poly::zero(F));
  for (long r = 0; r < d; ++r)
    for (long j = 0; j < basis.gens.cols(); ++j)
      best->numerator[r] =
          best->numerator[r] + basis.gens.at(r, j) * best->coeffs[j];
  return best.value();
}

mpz_class brute_force_count_in_ball(const LatticeBasis& basis, const QExp& r) {
  if (basis.gens.cols() != basis.dim())
    throw std::invalid_argument("brute_force_count_in_ball: square basis only");
  long d = basis.dim();
  Poly det = bareiss_det(basis.gens);
  if (det.is_zero())
    throw std::invalid_argument("brute_force_count_in_ball: singular basis");
  if (!r.is_integral())
    throw std::invalid_argument("brute_force_count_in_ball: radius not in q^Z");
  // Cramer window: deg c_i <= deg denom + e_r + sum_{j != i} colDeg_j - deg det.
  long e_r = r.int_exponent();
  long sum_deg = 0;
  for (long j = 0; j < d; ++j) sum_deg += basis.gens.col_degree(j);
  std::vector<long> win(d);
  for (long i = 0; i < d; ++i)
    win[i] = basis.denom.degree() + e_r + sum_deg - basis.gens.col_degree(i) -
             det.degree();
  mpz_class count = 1;  // zero vector
  enumerate_coeff_vectors(basis.field(), win, [&](const std::vector<Poly>& c) {
    QExp n = column_combo_norm(basis, c);
    if (n <= r) ++count;
  });
  return count;
}

namespace {

// Cramer window for coefficients of lattice points in B(0, q^rho):
// deg c_i <= deg s + rho + sum_{j != i} colDeg_j - deg det.
std::vector<long> cramer_windows(const LatticeBasis& basis, long rho,
                                 const Poly& det) {
  long d = basis.dim();
  long sum_deg = 0;
  for (long j = 0; j < d; ++j) sum_deg += basis.gens.col_degree(j);
  std::vector<long> win(d);
  for (long i = 0; i < d; ++i)
    win[i] = basis.denom.degree() + rho + sum_deg - basis.gens.col_degree(i) -
             det.degree();
  return win;
}

}  // namespace

mpz_class count_points_in_ball_linear(const LatticeBasis& basis,
                                      const QExp& r) {
  if (basis.gens.cols() != basis.dim())
    throw std::invalid_argument("count_points_in_ball_linear: square basis");
  if (!r.is_integral())
    throw std::invalid_argument("count_points_in_ball_linear: radius in q^Z");
  const FieldPtr& F = basis.field();
  long d = basis.dim();
  Poly det = bareiss_det(basis.gens);
  if (det.is_zero())
    throw std::invalid_argument("count_points_in_ball_linear: singular basis");
  long rho = r.int_exponent();
  std::vector<long> win = cramer_windows(basis, rho, det);

  // Variables: coefficients c_{i,t}, 0 <= t <= win[i] (none if win[i] < 0).
  std::vector<std::pair<long, long>> vars;  // (i, t)
  for (long i = 0; i < d; ++i)
    for (long t = 0; t <= win[i]; ++t) vars.emplace_back(i, t);
  if (vars.empty()) return 1;  // only the zero vector

  // Constraints: for every row, the coefficient of x^e in sum_i G[r][i] c_i
  // vanishes for all e > rho + deg s (up to the largest attainable degree).
  long cutoff = rho + basis.denom.degree();
  std::vector<std::vector<Fe>> rows;
  for (long rr = 0; rr < d; ++rr) {
    long emax = -1;
    for (long i = 0; i < d; ++i)
      if (win[i] >= 0 && !basis.gens.at(rr, i).is_zero())
        emax = std::max(emax, basis.gens.at(rr, i).degree() + win[i]);
    for (long e = cutoff + 1; e <= emax; ++e) {
      std::vector<Fe> row(vars.size(), 0);
      bool nonzero = false;
      for (size_t v = 0; v < vars.size(); ++v) {
        auto [i, t] = vars[v];
        Fe g = basis.gens.at(rr, i).coeff(e - t);
        row[v] = g;
        if (g != 0) nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }

  // Gaussian elimination over F_q; count = q^(#vars - rank).
  size_t rank = 0;
  size_t ncols = vars.size();
  for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    Fe inv = F->inv(rows[rank][col]);
    for (size_t j = col; j < ncols; ++j)
      rows[rank][j] = F->mul(rows[rank][j], inv);
    for (size_t rr = 0; rr < rows.size(); ++rr) {
      if (rr == rank || rows[rr][col] == 0) continue;
      Fe f = rows[rr][col];
      for (size_t j = col; j < ncols; ++j)
        rows[rr][j] = F->sub(rows[rr][j], F->mul(f, rows[rank][j]));
    }
    ++rank;
  }
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), F->q(),
                static_cast<unsigned long>(ncols - rank));
  return out;
}

QExp oracle_lambda1_by_counting(const LatticeBasis& basis) {
  long d = basis.dim();
  Poly det = bareiss_det(basis.gens);
  if (det.is_zero())
    throw std::invalid_argument("oracle_lambda1_by_counting: singular basis");
  // Guaranteed lower start: λ_1 = det/∏_{i>=2} λ_i >= det / M^(d-1) where M
  // is the largest generator-column norm (λ_d <= M).
  long det_exp = det.degree() - d * basis.denom.degree();
  long maxcol = 0;
  for (long j = 0; j < d; ++j)
    maxcol = std::max(maxcol, basis.gens.col_degree(j));
  long lo = det_exp - (d - 1) * (maxcol - basis.denom.degree()) - 1;
  for (long rho = lo;; ++rho) {
    if (count_points_in_ball_linear(basis, QExp::pow(rho)) > 1)
      return QExp::pow(rho);
    if (rho > lo + 4096)
      throw std::logic_error("oracle_lambda1_by_counting: scan ran away");
  }
}

LVec lattice_vector(const LatticeBasis& basis, const std::vector<Poly>& coeffs,
                    long prec) {
  long d = basis.dim();
  const FieldPtr& F = basis.field();
  std::vector<std::pair<Poly, Poly>> entries;
  for (long r = 0; r < d; ++r) {
    Poly acc = Poly::zero(F);
    for (long j = 0; j < basis.gens.cols(); ++j)
      acc = acc + basis.gens.at(r, j) * coeffs[j];
    entries.emplace_back(acc, basis.denom);
  }
  return LVec::from_rationals(entries, prec);
}

}  // namespace ffdioph
