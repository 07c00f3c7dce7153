#include "ffdioph/diophantine.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffdioph {

bool ApproxPair::in_Q() const {
  if (b.is_zero()) return false;
  std::vector<Poly> all = a;
  all.push_back(b);
  return gcd_all(all).is_one();
}

ApproxPair ApproxPair::canonical() const {
  if (b.is_zero()) throw std::domain_error("ApproxPair: b must be nonzero");
  Fe c = field()->inv(b.leading());
  if (c == 1) return *this;
  ApproxPair out;
  out.a.reserve(a.size());
  for (const auto& ai : a) out.a.push_back(ai * c);
  out.b = b * c;
  return out;
}

bool ApproxPair::same_orbit(const ApproxPair& o) const {
  if (dim() != o.dim()) return false;
  return canonical() == o.canonical();
}

LVec ApproxPair::uhat(long prec) const {
  std::vector<std::pair<Poly, Poly>> entries;
  for (const auto& ai : a) entries.emplace_back(ai, b);
  return LVec::from_rationals(entries, prec);
}

ApproxPair unit_pair(const FieldPtr& F, long d) {
  ApproxPair u;
  u.a.assign(d, Poly::zero(F));
  u.b = Poly::one(F);
  return u;
}

QExp approx_quality(const LVec& theta, const ApproxPair& u) {
  if (theta.dim() != u.dim())
    throw std::invalid_argument("approx_quality: dimension mismatch");
  LVec amount = theta.mul_poly(u.b);
  std::vector<Laurent> diff;
  for (long i = 0; i < theta.dim(); ++i)
    diff.push_back(amount[i] - Laurent::from_poly(u.a[i]));
  LVec dv(std::move(diff));
  try {
    return dv.sup_norm();
  } catch (const PrecisionError&) {
    // All coordinates certified zero windows: for rational entries this is
    // exact zero, otherwise the norm genuinely is indeterminate.
    throw;
  }
}

QExp FareyLattice::lambda_hat(long i) const {
  mpq_class e(u.size_exp(), static_cast<long>(dim()));
  e.canonicalize();
  return QExp::pow(e + lambda_exp(i));
}

std::vector<Poly> FareyLattice::pi_u_numerator(const ApproxPair& v) const {
  std::vector<Poly> out;
  out.reserve(u.dim());
  for (long i = 0; i < u.dim(); ++i) out.push_back(v.b * u.a[i] - u.b * v.a[i]);
  return out;
}

std::optional<std::vector<Poly>> FareyLattice::coordinates_of(
    const std::vector<Poly>& num, const Poly& den) const {
  // Solve xi * c = u.b * num / den over R via Cramer.
  long d = dim();
  const FieldPtr& F = u.field();
  Poly det_xi = bareiss_det(lat.xi);
  std::vector<Poly> out;
  for (long i = 0; i < d; ++i) {
    PolyMat m = lat.xi;
    for (long r = 0; r < d; ++r) m.at(r, i) = num[r];
    Poly N = bareiss_det(m) * u.b;
    auto [s, rem] = divmod(N, den * det_xi);
    if (!rem.is_zero()) return std::nullopt;
    out.push_back(s);
  }
  return out;
}

FareyLattice farey_lattice(const ApproxPair& u) {
  if (!u.in_Q()) throw std::invalid_argument("farey_lattice: u not in Q");
  const FieldPtr& F = u.field();
  long d = u.dim();
  // Generators b*e_1, ..., b*e_d, a over denominator b; lifts in R^{d+1}
  // record pi_u preimages: e_i = pi_u(-e_i, 0), uhat = pi_u(0, 1).
  PolyMat gens(F, d, d + 1);
  for (long i = 0; i < d; ++i) gens.at(i, i) = u.b;
  for (long i = 0; i < d; ++i) gens.at(i, d) = u.a[i];
  PolyMat track(F, d + 1, d + 1);
  for (long i = 0; i < d; ++i) track.at(i, i) = -Poly::one(F);
  track.at(d, d) = Poly::one(F);

  LatticeBasis basis{gens, u.b};
  ReducedLattice rl = column_reduce(basis, &track);
  // The cancelled generator combination must be the kernel generator u.
  if (rl.kernel_lifts.size() != 1)
    throw std::logic_error("farey_lattice: unexpected kernel rank");
  {
    ApproxPair ker;
    ker.a.assign(rl.kernel_lifts[0].begin(), rl.kernel_lifts[0].end() - 1);
    ker.b = rl.kernel_lifts[0].back();
    if (ker.b.is_zero() || !ker.same_orbit(u))
      throw std::logic_error("farey_lattice: kernel is not F_q^* u");
  }

  FareyLattice fl;
  fl.u = u;
  fl.lat = rl;
  fl.r_u = rl.lambda(0);
  for (long c = 0; c < d; ++c) {
    std::vector<Poly> lift;
    for (long r = 0; r <= d; ++r) lift.push_back(rl.lifts.at(r, c));
    fl.xi_lifts.push_back(std::move(lift));
  }
  return fl;
}

QExp r_of_u_bruteforce(const ApproxPair& u) {
  if (!u.in_Q()) throw std::invalid_argument("r_of_u_bruteforce: u not in Q");
  const FieldPtr& F = u.field();
  long d = u.dim();
  long db = u.b.degree();
  // A value of exactly 1 is always attainable off the orbit (perturb one
  // numerator coordinate by a unit at denominator 1).
  QExp best = QExp::one();
  for (long j = 0; j <= db; ++j) {
    PolyEnumerator en(F, j, true);
    Poly bp;
    while (en.next(bp)) {
      // Optimal numerator for this denominator: polynomial parts of bp*uhat.
      std::vector<Poly> ap(d, Poly::zero(F));
      QExp A = QExp::zero();
      for (long i = 0; i < d; ++i) {
        auto [s, rem] = divmod(bp * u.a[i], u.b);
        ap[i] = s;
        if (!rem.is_zero()) A = max(A, QExp::pow(rem.degree() - db));
      }
      ApproxPair v{ap, bp};
      if (!v.in_Q() || v.same_orbit(u)) continue;
      if (A.is_zero())
        throw std::logic_error("r_of_u_bruteforce: zero quality off orbit");
      best = min(best, A);
    }
  }
  return best;
}

bool in_H_u(const FareyLattice& fl, const ApproxPair& v) {
  long d = fl.dim();
  const FieldPtr& F = fl.u.field();
  // w = vhat - uhat has numerator (v.b * u.a - u.b * v.a) ... careful with
  // orientation; membership in the K~-span of xi_1..xi_{d-1} only needs w up
  // to scaling, so use the pi_u numerator of v.
  std::vector<Poly> w = fl.pi_u_numerator(v);
  bool zero = true;
  for (const auto& e : w)
    if (!e.is_zero()) zero = false;
  if (zero) return true;
  if (d == 1) return false;  // H'_u = {0}
  PolyMat m(F, d, d);
  for (long c = 0; c < d - 1; ++c)
    for (long r = 0; r < d; ++r) m.at(r, c) = fl.lat.xi.at(r, c);
  for (long r = 0; r < d; ++r) m.at(r, d - 1) = w[r];
  return bareiss_det(m).is_zero();
}

FiberBase fiber_base(const FareyLattice& fl,
                     const std::vector<Poly>& alpha_coords) {
  long d = fl.dim();
  const FieldPtr& F = fl.u.field();
  if (static_cast<long>(alpha_coords.size()) != d)
    throw std::invalid_argument("fiber_base: coordinate count");
  std::vector<Poly> lift(d + 1, Poly::zero(F));
  for (long i = 0; i < d; ++i)
    for (long r = 0; r <= d; ++r)
      lift[r] = lift[r] + fl.xi_lifts[i][r] * alpha_coords[i];
  Poly b2 = lift[d];
  auto [qq, b1] = divmod(b2, fl.u.b);
  FiberBase base;
  base.b1 = b1;
  base.a1.reserve(d);
  for (long i = 0; i < d; ++i) base.a1.push_back(lift[i] - qq * fl.u.a[i]);
  return base;
}

ApproxPair fiber_element(const FareyLattice& fl, const FiberBase& base,
                         const Poly& s) {
  ApproxPair v;
  v.b = base.b1 + fl.u.b * s;
  v.a.reserve(fl.dim());
  for (long i = 0; i < fl.dim(); ++i)
    v.a.push_back(base.a1[i] + fl.u.a[i] * s);
  return v;
}

FiberCount fiber_count(const FareyLattice& fl,
                       const std::vector<Poly>& alpha_coords, long k) {
  if (k < 0) throw std::invalid_argument("fiber_count: k >= 0");
  const FieldPtr& F = fl.u.field();
  const unsigned q = F->q();
  FiberCount out;
  bool all_zero = true;
  for (const auto& c : alpha_coords)
    if (!c.is_zero()) all_zero = false;
  out.alpha_primitive = !all_zero && gcd_all(alpha_coords).is_one();
  mpz_class qk;
  mpz_ui_pow_ui(qk.get_mpz_t(), q, static_cast<unsigned long>(k));
  out.primitive_value = mpz_class(q - 1) * qk;
  FiberBase base = fiber_base(fl, alpha_coords);
  out.count = 0;
  PolyEnumerator en(F, k, false);
  Poly s;
  while (en.next(s)) {
    ApproxPair v = fiber_element(fl, base, s);
    if (v.in_Q()) ++out.count;
  }
  return out;
}

BestApproxSeq best_approx_sequence(const LVec& theta, long degree_bound) {
  long d = theta.dim();
  if (d < 1) throw std::invalid_argument("best_approx_sequence: empty theta");
  const FieldPtr& F = theta[0].field();
  bool all_rational = true;
  for (const auto& e : theta.entries())
    if (!e.is_rational()) all_rational = false;
  if (!all_rational) {
    long need = (d + 1) * degree_bound + 4;
    for (const auto& e : theta.entries())
      if (e.prec() < need)
        throw PrecisionError(
            "best_approx_sequence: theta must be certified to exponent -" +
            std::to_string(need));
  }

  BestApproxSeq seq;
  seq.theta = theta;
  seq.degree_bound = degree_bound;

  std::optional<QExp> prev_min;
  for (long j = 0; j <= degree_bound; ++j) {
    std::optional<QExp> class_min;
    std::vector<BestApproxEntry> attainers;
    PolyEnumerator en(F, j, true);
    Poly bp;
    while (en.next(bp)) {
      std::vector<Poly> ap(d, Poly::zero(F));
      std::vector<Laurent> frac(d, Laurent::zero(F));
      for (long i = 0; i < d; ++i) {
        auto [p, f] = theta[i].mul_poly(bp).poly_fractional_split();
        ap[i] = p;
        frac[i] = f;
      }
      QExp A;
      bool exact_zero = false;
      try {
        A = LVec(frac).sup_norm();
        exact_zero = A.is_zero();
      } catch (const PrecisionError&) {
        throw PrecisionError(
            "best_approx_sequence: cannot rank candidates at this precision");
      }
      ApproxPair v{ap, bp};
      if (!v.in_Q()) continue;
      if (!class_min || A < *class_min) {
        class_min = A;
        attainers.clear();
        attainers.push_back({v, A});
      } else if (A == *class_min) {
        attainers.push_back({v, A});
      }
      (void)exact_zero;
    }
    if (!class_min) continue;
    if (!prev_min || *class_min < *prev_min) {
      if (attainers.size() != 1)
        throw std::logic_error(
            "best_approx_sequence: non-unique best approximation in a size "
            "class (denominators must agree up to units)");
      seq.entries.push_back(attainers.front());
      if (class_min->is_zero()) {
        seq.theta_rational = true;
        break;
      }
    }
    prev_min = prev_min ? min(*prev_min, *class_min) : *class_min;
  }
  return seq;
}

DITestReport di_test(const BestApproxSeq& seq, const mpq_class& eps) {
  if (seq.entries.empty())
    throw std::invalid_argument("di_test: empty sequence");
  if (eps <= 0) throw std::invalid_argument("di_test: eps must be positive");
  const unsigned q = seq.entries.front().u.field()->q();
  long d = seq.entries.front().u.dim();
  DITestReport rep;
  rep.theta_rational_degenerate = seq.theta_rational;
  mpq_class eps_d = mpq_pow(eps, d);
  for (size_t n = 0; n < seq.entries.size(); ++n) {
    const ApproxPair& u = seq.entries[n].u;
    FareyLattice fl = farey_lattice(u.canonical());
    DITestEntry e;
    e.index = static_cast<long>(n + 1);
    e.size_exp = u.size_exp();
    long lhs_exp = u.size_exp() + d * fl.lat.minima_exp.front();
    e.lhs_pow_d = mpq_pow(mpq_class(static_cast<long>(q)), lhs_exp);
    int c = cmp(e.lhs_pow_d, eps_d);
    e.verdict = c < 0 ? DIVerdict::Pass : (c == 0 ? DIVerdict::Boundary
                                                  : DIVerdict::Fail);
    rep.entries.push_back(e);
  }
  if (!seq.theta_rational) {
    // Consistent when some suffix passes strictly.
    long first_bad = -1;
    for (size_t n = 0; n < rep.entries.size(); ++n)
      if (rep.entries[n].verdict != DIVerdict::Pass)
        first_bad = static_cast<long>(n);
    rep.prefix_consistent = first_bad + 1 < static_cast<long>(rep.entries.size());
  }
  return rep;
}

}  // namespace ffdioph
