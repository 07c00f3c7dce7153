#include "ffdioph/fractal_upper.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ffdioph {

namespace {

mpq_class rq(long num, long den = 1) {
  mpq_class v(num, den);
  v.canonicalize();
  return v;
}

// Enumerate tuples of polynomials with deg t_i <= win[i] (win[i] < 0 forces 0),
// lexicographic in the poly order, least significant index first.
void for_each_tuple(const FieldPtr& F, const std::vector<long>& win,
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
    fn(cur);
    long i = 0;
    while (i < m && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == m) break;
  }
}

// ||û - v̂|| as exact q-power from the pi_u numerator:  |pi_u(v)| / |v||u|...
// ||û - v̂|| = ||pi_u(v)||/|v|, and ||pi_u(v)|| = (numerator degree) - deg b_u.
QExp uhat_vhat_distance(const FareyLattice& fl, const ApproxPair& v) {
  std::vector<Poly> num = fl.pi_u_numerator(v);
  long dmax = -1;
  for (const auto& e : num) dmax = std::max(dmax, e.degree());
  if (dmax < 0) return QExp::zero();
  return QExp::pow(dmax - fl.u.b.degree() - v.b.degree());
}

}  // namespace

UpperNode make_upper_node(const ApproxPair& u) {
  FareyLattice fl = farey_lattice(u);
  long d = u.dim();
  mpq_class rad_exp = rq(-(d + 1) * u.size_exp(), d);
  Ball ball(u.uhat(), QExp::pow(rad_exp));
  return UpperNode{u, std::move(fl), std::move(ball)};
}

bool in_Q_eps(const UpperNode& node, const mpq_class& eps) {
  long d = node.u.dim();
  // λ̂_1 < eps  <=>  q^(e_u + d*l_1) < eps^d
  long e = node.u.size_exp() + d * node.fl.lambda_exp(0);
  return QExp::pow(e).compare_rational(node.u.field()->q(), mpq_pow(eps, d)) < 0;
}

std::vector<Shell> enumerate_D(const UpperNode& node, long cutoff) {
  if (cutoff < 0) throw std::invalid_argument("enumerate_D: cutoff >= 0");
  const FieldPtr& F = node.u.field();
  long d = node.u.dim();
  const FareyLattice& fl = node.fl;
  std::vector<Shell> shells;
  for (long k = 0; k <= cutoff; ++k) {
    Shell shell{k, {}};
    // alpha = sum_{i<d} c_i xi_i with |c_i| lambda_i <= q^k lambda_1.
    std::vector<long> win(d - 1);
    for (long i = 0; i + 1 < d; ++i)
      win[i] = k + fl.lambda_exp(0) - fl.lambda_exp(i);
    auto handle_alpha = [&](const std::vector<Poly>& c) {
      std::vector<Poly> coords = c;
      coords.push_back(Poly::zero(F));  // no xi_d component
      FiberBase base = fiber_base(fl, coords);
      PolyEnumerator en(F, k, false);
      Poly s;
      while (en.next(s)) {
        ApproxPair v = fiber_element(fl, base, s);
        if (!v.in_Q()) continue;
        // Defining conditions, re-checked exactly.
        if (v.size_exp() != node.u.size_exp() + k)
          throw std::logic_error("enumerate_D: fiber size drifted");
        QExp dist = uhat_vhat_distance(fl, v);
        QExp rhs = QExp::pow(fl.lambda_exp(0) - node.u.size_exp());
        if (!(dist <= rhs))
          throw std::logic_error("enumerate_D: norm condition violated");
        shell.members.push_back(std::move(v));
      }
    };
    if (d == 1) {
      handle_alpha({});
    } else {
      for_each_tuple(F, win, handle_alpha);
    }
    shells.push_back(std::move(shell));
  }
  return shells;
}

std::vector<Shell> enumerate_E(const UpperNode& node, const ApproxPair& v,
                               const mpq_class& eps, long cutoff) {
  if (cutoff < 0) throw std::invalid_argument("enumerate_E: cutoff >= 0");
  const FieldPtr& F = node.u.field();
  const unsigned q = F->q();
  long d = node.u.dim();
  // v must lie in D(u).
  {
    bool ok = v.in_Q() && v.size_exp() >= node.u.size_exp() &&
              in_H_u(node.fl, v);
    if (ok) {
      QExp dist = uhat_vhat_distance(node.fl, v);
      ok = dist <= QExp::pow(node.fl.lambda_exp(0) - node.u.size_exp());
    }
    if (!ok) throw std::invalid_argument("enumerate_E: v not in D(u)");
  }
  FareyLattice flv = farey_lattice(v.canonical());
  long e_v = v.size_exp();
  mpq_class eps_d = mpq_pow(eps, d);
  std::vector<Shell> shells;
  for (long k = 1; k <= cutoff; ++k) {
    Shell shell{k, {}};
    // ||alpha|| < eps q^(k(d-1)/d) |v|^(-1/d); find the smallest integer cap m
    // with q^m >= RHS, then filter each alpha exactly.
    mpq_class rhs_exp = rq(k * (d - 1) - e_v, d);  // log_q of RHS minus log_q eps
    long m_cap = 0;
    {
      // minimal m with q^(m*d) * 1 >= eps^d * q^(k(d-1)-e_v)
      long lo = -64, hi = 64;
      while (lo < hi) {
        long mid = lo + (hi - lo) / 2;
        int c = compare_qpow_vs_rpow(q, mpq_class(mid) - rhs_exp, eps, 1);
        if (c >= 0)
          hi = mid;
        else
          lo = mid + 1;
      }
      m_cap = lo;
    }
    std::vector<long> win(d);
    for (long i = 0; i < d; ++i) win[i] = m_cap - flv.lambda_exp(i);
    for_each_tuple(F, win, [&](const std::vector<Poly>& coords) {
      bool zero = true;
      for (const auto& c : coords)
        if (!c.is_zero()) zero = false;
      if (zero) return;
      // Exact strict norm filter: ||alpha||^d < eps^d q^(k(d-1)-e_v).
      QExp an = flv.lat.vector_norm(coords);
      if (an.is_zero()) return;
      long a_exp = an.int_exponent();
      if (compare_qpow_vs_rpow(q, mpq_class(a_exp * d) - (rhs_exp * d), eps,
                               d) >= 0)
        return;
      // alpha must avoid H'_u.
      std::vector<Poly> alpha_num = flv.lat.combination_numerator(coords);
      bool in_Hprime;
      if (d == 1) {
        in_Hprime = false;
      } else {
        PolyMat m(F, d, d);
        for (long c2 = 0; c2 + 1 < d; ++c2)
          for (long r = 0; r < d; ++r) m.at(r, c2) = node.fl.lat.xi.at(r, c2);
        for (long r = 0; r < d; ++r) m.at(r, d - 1) = alpha_num[r];
        in_Hprime = bareiss_det(m).is_zero();
      }
      if (in_Hprime) return;
      FiberBase base = fiber_base(flv, coords);
      PolyEnumerator en(F, k, false);
      Poly s;
      while (en.next(s)) {
        ApproxPair w = fiber_element(flv, base, s);
        if (!w.in_Q()) continue;
        if (in_H_u(node.fl, w))
          throw std::logic_error("enumerate_E: fiber landed in H_u");
        shell.members.push_back(std::move(w));
      }
    });
    shells.push_back(std::move(shell));
  }
  return shells;
}

namespace {

// partial = sum_k #shell_k q^(-k t); bound = bound_num / (q^(t-d) - 1) with
// bound_num a QSum.  partial <= bound  <=>
// partial * q^(t-d) - partial - bound_num <= 0 (the multiplier is positive
// for t > d).
ChildSumResult sum_shells_vs_bound(const FieldPtr& F,
                                   const std::vector<Shell>& shells,
                                   const mpq_class& t, long d,
                                   const QSum& bound_num,
                                   double bound_num_approx) {
  const unsigned q = F->q();
  const unsigned kext = F->k();
  ChildSumResult out{QSum(F->p()), false, {}, 0.0, 0.0};
  for (const auto& sh : shells) {
    out.shell_sizes.push_back(static_cast<long>(sh.members.size()));
    if (!sh.members.empty())
      out.partial.add_term_base_q(rq(static_cast<long>(sh.members.size())),
                                  -t * sh.k, kext);
  }
  QSum factor(F->p());
  factor.add_term_base_q(1, t - d, kext);
  QSum diff = out.partial * factor;
  diff -= out.partial;
  diff -= bound_num;
  out.within_bound = diff.sign() <= 0;
  out.partial_approx = out.partial.approx();
  double qtd = std::pow(static_cast<double>(q), t.get_d() - d);
  out.bound_approx = bound_num_approx / (qtd - 1.0);
  return out;
}

}  // namespace

ChildSumResult child_sum_D(const UpperNode& node, const mpq_class& t,
                           long cutoff) {
  long d = node.u.dim();
  if (!(t > d)) throw std::invalid_argument("child_sum_D: t > d required");
  const FieldPtr& F = node.u.field();
  const long q = F->q();
  auto shells = enumerate_D(node, cutoff);
  QSum bound_num(F->p());  // (q-1) q^(t-1)
  bound_num.add_term_base_q(rq(q - 1), t - 1, F->k());
  double bn_approx =
      (q - 1) * std::pow(static_cast<double>(q), t.get_d() - 1);
  return sum_shells_vs_bound(F, shells, t, d, bound_num, bn_approx);
}

ChildSumResult child_sum_E(const UpperNode& node, const ApproxPair& v,
                           const mpq_class& eps, const mpq_class& t,
                           long cutoff) {
  long d = node.u.dim();
  if (!(t > d)) throw std::invalid_argument("child_sum_E: t > d required");
  const FieldPtr& F = node.u.field();
  const long q = F->q();
  auto shells = enumerate_E(node, v, eps, cutoff);
  mpq_class num_coeff = rq(q - 1) * mpq_pow(rq(q + q * q), d) * mpq_pow(eps, d);
  QSum bound_num(F->p());
  bound_num.add_term(num_coeff, 0);
  return sum_shells_vs_bound(F, shells, t, d, bound_num, num_coeff.get_d());
}

AdmissibleResult admissible_from_theta(const LVec& theta, const mpq_class& eps,
                                       long degree_bound) {
  AdmissibleResult out;
  out.seq = best_approx_sequence(theta, degree_bound);
  long d = theta.dim();
  const unsigned q = theta[0].field()->q();
  if (out.seq.theta_rational) {
    out.status = AdmissibleStatus::Degenerate;
    return out;
  }
  long n = static_cast<long>(out.seq.entries.size());
  // n_1: start of the longest suffix inside Q_eps.
  std::vector<FareyLattice> fls;
  long start = -1;
  for (long i = 0; i < n; ++i) {
    fls.push_back(farey_lattice(out.seq.entries[i].u.canonical()));
    long e = out.seq.entries[i].u.size_exp() + d * fls[i].lambda_exp(0);
    bool in_eps = QExp::pow(e).compare_rational(q, mpq_pow(eps, d)) < 0;
    if (!in_eps) start = i + 1;  // last failure so far; suffix starts after
  }
  if (start < 0) start = 0;
  if (start >= n) {
    out.status = AdmissibleStatus::NotInQEps;
    return out;
  }
  out.start_index = start;
  long cur = start;
  while (true) {
    long next = -1;
    for (long m = cur + 1; m < n; ++m)
      if (!in_H_u(fls[cur], out.seq.entries[m].u)) {
        next = m;
        break;
      }
    if (next < 0) {
      out.status = AdmissibleStatus::HorizonExhausted;
      return out;
    }
    const ApproxPair& u = out.seq.entries[cur].u;
    const ApproxPair& v = out.seq.entries[next - 1].u;
    const ApproxPair& w = out.seq.entries[next].u;
    AdmissibleLink link;
    link.from_index = cur;
    link.witness_index = next - 1;
    link.to_index = next;
    // v in D(u): |u| <= |v|, v in H_u, ||û-v̂|| <= λ_1(Λ_u)/|u|.
    {
      bool ok = v.size_exp() >= u.size_exp() && in_H_u(fls[cur], v);
      if (ok) {
        std::vector<Poly> num = fls[cur].pi_u_numerator(v);
        long dm = -1;
        for (const auto& e : num) dm = std::max(dm, e.degree());
        QExp dist = dm < 0 ? QExp::zero()
                           : QExp::pow(dm - u.b.degree() - v.b.degree());
        ok = dist <= QExp::pow(fls[cur].lambda_exp(0) - u.size_exp());
      }
      link.d_checks = ok;
    }
    // w in E(u,v,eps): |v| < |w|, w not in H_u,
    // ||v̂-ŵ||^d |v|^d |w| < eps^d.
    {
      bool ok = w.size_exp() > v.size_exp() && !in_H_u(fls[cur], w);
      if (ok) {
        FareyLattice flv = farey_lattice(v.canonical());
        std::vector<Poly> num = flv.pi_u_numerator(w);
        long dm = -1;
        for (const auto& e : num) dm = std::max(dm, e.degree());
        if (dm < 0) {
          ok = false;
        } else {
          long dist_exp = dm - v.b.degree() - w.b.degree();
          long lhs_exp = d * dist_exp + d * v.size_exp() + w.size_exp();
          ok = QExp::pow(lhs_exp).compare_rational(q, mpq_pow(eps, d)) < 0;
        }
      }
      link.e_checks = ok;
    }
    if (!link.d_checks || !link.e_checks)
      throw std::logic_error("admissible_from_theta: link checks failed");
    out.links.push_back(link);
    cur = next;
    if (cur == n - 1) break;
  }
  out.status = AdmissibleStatus::Complete;
  return out;
}

ContractionResult contraction_check(const UpperNode& node, const mpq_class& s,
                                    const mpq_class& eps, long cutoff) {
  long d = node.u.dim();
  mpq_class lo = rq(d * d, d + 1);
  if (!(s > lo && s <= d))
    throw std::invalid_argument("contraction_check: need d^2/(d+1) < s <= d");
  const FieldPtr& F = node.u.field();
  const long q = F->q();
  const unsigned kext = F->k();
  mpq_class tau = s * rq(d + 1, d);  // (1+1/d) s, > d on the allowed range

  ContractionResult out{false, QSum(F->p()), 0.0, 0.0};
  QSum A(F->p());  // double-counted enumerated sum
  QSum B(F->p());  // sum over enumerated v of (|u|/|v|)^tau
  std::set<std::vector<std::vector<Fe>>> seen;  // canonical w keys (dedup)

  auto shells_D = enumerate_D(node, cutoff);
  for (const auto& shD : shells_D) {
    for (const auto& v : shD.members) {
      B.add_term_base_q(1, -tau * shD.k, kext);
      auto shells_E = enumerate_E(node, v, eps, cutoff);
      for (const auto& shE : shells_E) {
        if (shE.members.empty()) continue;
        mpq_class expo = -tau * (shD.k + shE.k);
        A.add_term_base_q(rq(static_cast<long>(shE.members.size())), expo,
                          kext);
        for (const auto& w : shE.members) {
          ApproxPair wc = w.canonical();
          std::vector<std::vector<Fe>> key;
          for (const auto& ai : wc.a) key.push_back(ai.coeffs());
          key.push_back(wc.b.coeffs());
          if (seen.insert(key).second)
            out.partial_dedup.add_term_base_q(1, expo, kext);
        }
      }
    }
  }

  // U <= 1 with U = A + B c_E y^(K+1)/(1-y) + (q-1) q^(d-1) y^(K+1)/(1-y) *
  // c_E y/(1-y), y = q^-(tau-d), c_E = (q-1)(q+q^2)^d eps^d:
  // multiply through by (1-y)^2 > 0.
  mpq_class c_E = rq(q - 1) * mpq_pow(rq(q + q * q), d) * mpq_pow(eps, d);
  QSum y(F->p());
  y.add_term_base_q(1, d - tau, kext);
  QSum one(F->p());
  one.add_term(1, 0);
  QSum one_minus_y = one;
  one_minus_y -= y;
  QSum lhs = A * one_minus_y * one_minus_y;
  {
    QSum term = B * one_minus_y;
    QSum yk(F->p());
    yk.add_term_base_q(c_E, (d - tau) * (cutoff + 1), kext);
    lhs += term * yk;
  }
  {
    QSum yk(F->p());
    yk.add_term_base_q(c_E * rq(q - 1) * mpq_pow(rq(q), d - 1),
                       (d - tau) * (cutoff + 2), kext);
    lhs += yk;
  }
  QSum rhs = one_minus_y * one_minus_y;
  QSum diff = lhs;
  diff -= rhs;
  out.holds = diff.sign() <= 0;
  out.partial_approx = out.partial_dedup.approx();
  out.upper_bound_approx = lhs.approx() / rhs.approx();
  return out;
}

}  // namespace ffdioph
