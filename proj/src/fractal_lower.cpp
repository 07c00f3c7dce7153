#include "ffdioph/fractal_lower.hpp"

#include <mpfr.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ffdioph/factor.hpp"

namespace ffdioph {

namespace {

mpq_class rq(long num, long den = 1) {
  mpq_class v(num, den);
  v.canonicalize();
  return v;
}

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

// minimal L >= 0 with eps * q^L >= 1 (rough size of log_q(1/eps)).
long eps_inv_log_cap(unsigned q, const mpq_class& eps) {
  mpq_class v = eps;
  long L = 0;
  while (v < 1) {
    v *= static_cast<long>(q);
    ++L;
    if (L > 4096) throw std::invalid_argument("eps too small");
  }
  return L;
}

}  // namespace

bool AlphaVector::primitive() const {
  std::vector<Poly> all = m;
  all.push_back(n);
  return gcd_all(all).is_one();
}

std::vector<Poly> AlphaVector::full_coords() const {
  std::vector<Poly> all = m;
  all.push_back(n);
  return all;
}

LowerNode make_lower_node(const ApproxPair& u, long depth) {
  FareyLattice fl = farey_lattice(u);
  long rad_exp = fl.lambda_exp(0) - 1 - u.size_exp();
  Ball ball(u.uhat(), QExp::pow(rad_exp));
  return LowerNode{u, std::move(fl), std::move(ball), depth};
}

QExp AlphaLattice::lambda1_hat(long d) const {
  mpq_class e = wedge_exp / rq(d - 1) + scaled.minima_exp.front();
  return QExp::pow(e);
}

AlphaLattice lambda_alpha(const FareyLattice& fl, const AlphaVector& alpha) {
  long d = fl.dim();
  if (d < 2) throw std::invalid_argument("lambda_alpha: d >= 2 required");
  if (alpha.n.is_zero())
    throw std::invalid_argument("lambda_alpha: n must be nonzero");
  if (static_cast<long>(alpha.m.size()) != d - 1)
    throw std::invalid_argument("lambda_alpha: need d-1 m-coefficients");
  const FieldPtr& F = fl.u.field();

  // Weighted coordinates: row i is scaled by x^(l_i + T) so the standard
  // norm of the scaled lattice realizes ||sum c_i xi_i|| = max |c_i| λ_i.
  long lmin = fl.lambda_exp(0);
  for (long i = 0; i + 1 < d; ++i) lmin = std::min(lmin, fl.lambda_exp(i));
  long T = std::max(0L, -lmin);
  PolyMat S(F, d - 1, d);
  for (long i = 0; i + 1 < d; ++i) {
    S.at(i, i) = alpha.n.shifted(fl.lambda_exp(i) + T);
    S.at(i, d - 1) = alpha.m[i].shifted(fl.lambda_exp(i) + T);
  }
  LatticeBasis basis{S, alpha.n.shifted(T)};
  AlphaLattice out;
  out.scaled = column_reduce(basis);
  out.det_exp = out.scaled.det_exp;

  long an = alpha.n.degree() + fl.lambda_exp(d - 1);
  out.xi_d_dominant = true;
  for (long i = 0; i + 1 < d; ++i) {
    if (alpha.m[i].is_zero()) continue;
    long mi = alpha.m[i].degree() + fl.lambda_exp(i);
    if (mi > an) out.xi_d_dominant = false;
    an = std::max(an, mi);
  }
  out.alpha_norm_exp = an;
  out.wedge_exp = rq(fl.u.size_exp() + an);

  if (alpha.primitive()) {
    long expected = -alpha.n.degree();
    for (long i = 0; i + 1 < d; ++i) expected += fl.lambda_exp(i);
    if (out.det_exp != expected)
      throw std::logic_error("lambda_alpha: covolume identity failed");
  }
  return out;
}

std::vector<ChildGroup> enumerate_children(const LowerNode& node,
                                           const mpq_class& eps, long N) {
  long d = node.u.dim();
  if (d < 2) throw std::invalid_argument("enumerate_children: d >= 2");
  if (!(eps > 0 && eps < 1))
    throw std::invalid_argument("enumerate_children: 0 < eps < 1 required");
  if (N < 1) throw std::invalid_argument("enumerate_children: N >= 1");
  const FieldPtr& F = node.u.field();
  const unsigned q = F->q();
  long e_u = node.u.size_exp();
  long l_d = node.fl.lambda_exp(d - 1);
  long Lcap = eps_inv_log_cap(q, eps);

  std::vector<ChildGroup> out;
  for (long degn = 0; degn <= N; ++degn) {
    for (const Poly& n : all_polys_of_degree(F, degn, false)) {
      std::vector<long> win(d - 1);
      for (long i = 0; i + 1 < d; ++i)
        win[i] = degn + l_d - node.fl.lambda_exp(i) - 1;
      for_each_tuple(F, win, [&](const std::vector<Poly>& m) {
        AlphaVector alpha{m, n};
        if (!alpha.primitive()) return;
        AlphaLattice al = lambda_alpha(node.fl, alpha);
        if (!al.xi_d_dominant)
          throw std::logic_error("enumerate_children: box lost dominance");
        // lambda1_hat(alpha) > eps, both sides to the (d-1)-th power.
        mpq_class lhs_exp =
            al.wedge_exp + rq((d - 1) * al.scaled.minima_exp.front());
        if (compare_qpow_vs_rpow(q, lhs_exp, eps, d - 1) <= 0) return;
        // zeta window: (||α|| |u| / eps)^{d/(d-1)} <= q^(e_u+k)
        //           <= (q ||α|| |u| / eps)^{d/(d-1)}.
        long wedge = e_u + al.alpha_norm_exp;
        long cap =
            (d * (1 + wedge + Lcap)) / (d - 1) - e_u + 2;
        for (long k = 0; k <= cap; ++k) {
          mpq_class lo = rq((e_u + k) * (d - 1) - d * wedge);
          int c_lo = compare_qpow_vs_rpow(q, lo, 1 / eps, d);
          if (c_lo < 0) continue;  // below the lower edge
          mpq_class hi = lo - d;
          int c_hi = compare_qpow_vs_rpow(q, hi, 1 / eps, d);
          if (c_hi > 0) break;  // beyond the upper edge
          ChildGroup g;
          g.alpha = alpha;
          g.shell_k = k;
          g.base = fiber_base(node.fl, alpha.full_coords());
          mpz_class qk;
          mpz_ui_pow_ui(qk.get_mpz_t(), q, static_cast<unsigned long>(k));
          g.count = mpz_class(q - 1) * qk;
          g.alpha_norm_exp = al.alpha_norm_exp;
          out.push_back(std::move(g));
        }
      });
    }
  }
  return out;
}

std::vector<ApproxPair> materialize(const LowerNode& node,
                                    const ChildGroup& group) {
  const FieldPtr& F = node.u.field();
  std::vector<ApproxPair> out;
  PolyEnumerator en(F, group.shell_k, false);
  Poly s;
  while (en.next(s)) {
    ApproxPair v = fiber_element(node.fl, group.base, s);
    if (!v.in_Q())
      throw std::logic_error("materialize: fiber of primitive alpha left Q");
    if (v.size_exp() != node.u.size_exp() + group.shell_k)
      throw std::logic_error("materialize: fiber size drifted");
    out.push_back(std::move(v));
  }
  if (mpz_class(static_cast<long>(out.size())) != group.count)
    throw std::logic_error("materialize: fiber count mismatch");
  return out;
}

ChildChecks check_child(const LowerNode& node, const ChildGroup& group,
                        const ApproxPair& v, const mpq_class& eps) {
  ChildChecks c;
  c.in_Q = v.in_Q();
  if (!c.in_Q) return c;
  long d = node.u.dim();
  const unsigned q = v.field()->q();
  long e_u = node.u.size_exp();
  long e_v = v.size_exp();
  c.size_grows = e_v > e_u;
  FareyLattice flv = farey_lattice(v.canonical());
  long wedge = e_u + group.alpha_norm_exp;
  c.lambda1_identity = flv.lambda_exp(0) == wedge - e_v;
  // eps/q <= λ̂_1(v) <= eps, both sides to the d-th power.
  long lhat_d = e_v + d * flv.lambda_exp(0);
  bool upper = QExp::pow(lhat_d).compare_rational(q, mpq_pow(eps, d)) <= 0;
  bool lower =
      QExp::pow(lhat_d + d).compare_rational(q, mpq_pow(eps, d)) >= 0;
  c.window_ok = upper && lower;
  return c;
}

bool verify_nesting(const LowerNode& parent, const LowerNode& child) {
  // Lemma-level containment with the larger child ball B(v̂, λ_1(v)/|v|).
  Ball big_child(child.u.uhat(),
                 QExp::pow(child.fl.lambda_exp(0) - child.u.size_exp()));
  if (!ball_contains(parent.ball, big_child)) return false;
  return child.ball.radius < parent.ball.radius;
}

SeparationReport verify_separation(const LowerNode& node,
                                   const std::vector<ApproxPair>& children,
                                   const mpq_class& eps, long N) {
  SeparationReport rep;
  rep.min_distance = QExp::zero();
  long d = node.u.dim();
  const unsigned q = node.u.field()->q();
  if (children.size() < 2) {
    rep.bound_holds = true;
    return rep;
  }
  // Node balls B(v̂, λ_1(v)/(q|v|)); λ_1(v) from independent reductions.
  std::vector<Ball> balls;
  balls.reserve(children.size());
  for (const auto& v : children) {
    FareyLattice flv = farey_lattice(v.canonical());
    balls.emplace_back(v.uhat(),
                       QExp::pow(flv.lambda_exp(0) - 1 - v.size_exp()));
  }
  bool first = true;
  for (size_t i = 0; i < balls.size(); ++i)
    for (size_t j = i + 1; j < balls.size(); ++j) {
      QExp dist = ball_distance(balls[i], balls[j]);
      ++rep.pairs;
      if (first || dist < rep.min_distance) {
        rep.min_distance = dist;
        first = false;
      }
    }
  if (rep.min_distance.is_zero()) {
    rep.bound_holds = false;
    return rep;
  }
  // bound = (eps / (q^{N+1} λ̂_d))^{2d/(d-1)} λ_1/|u|; compare after raising
  // to d(d-1):  q^{m d(d-1)} >= eps^{2d^2} q^{E} with
  // E = -(N+1) 2d^2 - (2d^2 l_d + 2d e_u) + (l_1 - e_u) d(d-1).
  long m = rep.min_distance.int_exponent();
  long l_d = node.fl.lambda_exp(d - 1), l_1 = node.fl.lambda_exp(0);
  long e_u = node.u.size_exp();
  long E = -(N + 1) * 2 * d * d - (2 * d * d * l_d + 2 * d * e_u) +
           (l_1 - e_u) * d * (d - 1);
  rep.bound_holds =
      compare_qpow_vs_rpow(q, rq(m * d * (d - 1) - E), eps, 2 * d * d) >= 0;
  return rep;
}

namespace {

// zeta window of the recorded step, re-derived: lower <= |v| <= upper.
bool zeta_window_ok(unsigned q, long d, long e_u, long alpha_norm_exp,
                    long e_v, const mpq_class& eps) {
  long wedge = e_u + alpha_norm_exp;
  mpq_class lo = rq(e_v * (d - 1) - d * wedge);
  if (compare_qpow_vs_rpow(q, lo, 1 / eps, d) < 0) return false;
  if (compare_qpow_vs_rpow(q, lo - d, 1 / eps, d) > 0) return false;
  return true;
}

DIStep make_step(const LowerNode& node, const ChildGroup& g, const Poly& s,
                 const ApproxPair& v, const mpq_class& eps) {
  DIStep step;
  step.alpha = g.alpha;
  step.shell_k = g.shell_k;
  step.s = s;
  step.child = v;
  step.alpha_primitive = g.alpha.primitive();
  AlphaLattice al = lambda_alpha(node.fl, g.alpha);
  long d = node.u.dim();
  const unsigned q = node.u.field()->q();
  mpq_class lhs_exp = al.wedge_exp + rq((d - 1) * al.scaled.minima_exp.front());
  step.alpha_lambda_ok = compare_qpow_vs_rpow(q, lhs_exp, eps, d - 1) > 0;
  step.zeta_ok = zeta_window_ok(q, d, node.u.size_exp(), g.alpha_norm_exp,
                                v.size_exp(), eps);
  ChildChecks cc = check_child(node, g, v, eps);
  step.window_ok = cc.window_ok && cc.size_grows && cc.in_Q;
  step.lambda1_identity_ok = cc.lambda1_identity;
  LowerNode child_node = make_lower_node(v.canonical(), node.depth + 1);
  step.nesting_ok = verify_nesting(node, child_node);
  if (!(step.alpha_primitive && step.alpha_lambda_ok && step.zeta_ok &&
        step.window_ok && step.nesting_ok && step.lambda1_identity_ok))
    throw std::logic_error("certificate step failed its exact checks");
  return step;
}

ApproxPair choose_child(const LowerNode& node,
                        const std::vector<ChildGroup>& groups, Chooser chooser,
                        const ChildGroup** chosen_group, Poly* chosen_s) {
  const FieldPtr& F = node.u.field();
  if (chooser == Chooser::LexFirst) {
    const ChildGroup& g = groups.front();
    PolyEnumerator en(F, g.shell_k, false);
    Poly s;
    if (!en.next(s)) throw std::logic_error("choose_child: empty enumerator");
    *chosen_group = &g;
    *chosen_s = s;
    return fiber_element(node.fl, g.base, s);
  }
  // MaxSeparation: materialize everything, pick the child maximizing the
  // minimal distance to the others (ties resolved by enumeration order).
  struct Cand {
    const ChildGroup* g;
    Poly s;
    ApproxPair v;
    LVec vhat;
  };
  std::vector<Cand> cands;
  for (const auto& g : groups) {
    PolyEnumerator en(F, g.shell_k, false);
    Poly s;
    while (en.next(s)) {
      ApproxPair v = fiber_element(node.fl, g.base, s);
      LVec vh = v.uhat();
      cands.push_back(Cand{&g, s, std::move(v), std::move(vh)});
    }
  }
  if (cands.empty()) throw std::logic_error("choose_child: no candidates");
  size_t best = 0;
  QExp best_min;
  bool have_best = false;
  for (size_t i = 0; i < cands.size(); ++i) {
    QExp mind;
    bool first = true;
    for (size_t j = 0; j < cands.size(); ++j) {
      if (i == j) continue;
      QExp dist = (cands[i].vhat - cands[j].vhat).sup_norm();
      if (first || dist < mind) {
        mind = dist;
        first = false;
      }
    }
    if (!have_best || best_min < mind) {
      best = i;
      best_min = mind;
      have_best = true;
    }
  }
  *chosen_group = cands[best].g;
  *chosen_s = cands[best].s;
  return cands[best].v;
}

LVec theta_prefix_from(const ApproxPair& last, long ball_radius_exp) {
  long prec = -ball_radius_exp - 1;
  std::vector<Laurent> entries;
  for (long i = 0; i < last.dim(); ++i)
    entries.push_back(
        Laurent::from_rational(last.a[i], last.b, prec).as_truncation());
  return LVec(std::move(entries));
}

}  // namespace

DICertificate build_di_certificate(const mpq_class& eps, long N, long steps,
                                   const ApproxPair& root, Chooser chooser) {
  if (steps < 1) throw std::invalid_argument("build_di_certificate: steps >= 1");
  if (!root.in_Q())
    throw std::invalid_argument("build_di_certificate: root not in Q");
  DICertificate cert;
  cert.root = root;
  cert.chooser = chooser == Chooser::LexFirst ? "lex-first" : "max-separation";
  LowerNode node = make_lower_node(root, 0);
  for (long i = 0; i < steps; ++i) {
    auto groups = enumerate_children(node, eps, N);
    if (groups.empty())
      throw std::runtime_error(
          "build_di_certificate: no children at eps=" + eps.get_str() +
          ", N=" + std::to_string(N) +
          " (positivity hypothesis (q-1)/q - eps^(d-1) > 0 may fail)");
    const ChildGroup* g = nullptr;
    Poly s;
    ApproxPair v = choose_child(node, groups, chooser, &g, &s);
    cert.steps.push_back(make_step(node, *g, s, v, eps));
    cert.eps_schedule.push_back(eps);
    cert.N_schedule.push_back(N);
    cert.eps_analytic.push_back(eps.get_d());
    node = make_lower_node(v.canonical(), node.depth + 1);
  }
  cert.theta_prefix =
      theta_prefix_from(node.u, node.ball.radius.int_exponent());
  return cert;
}

SingLevel sing_schedule(unsigned q, long i) {
  if (i < 2)
    throw std::invalid_argument(
        "sing_schedule: requires log(i+1) > 1, i.e. i >= 2");
  mpfr_t x, lg, lq;
  mpfr_init2(x, 128);
  mpfr_init2(lg, 128);
  mpfr_init2(lq, 128);
  mpfr_set_si(x, i + 1, MPFR_RNDN);
  mpfr_log(lg, x, MPFR_RNDN);  // log(i+1)
  SingLevel lvl;
  lvl.N = i + 1;
  lvl.eps_analytic = 1.0 / mpfr_get_d(lg, MPFR_RNDN);
  // snapped exponent: floor(log_q(1/log(i+1))) = floor(-log(log(i+1))/log q)
  mpfr_t num, den, ratio;
  mpfr_init2(num, 128);
  mpfr_init2(den, 128);
  mpfr_init2(ratio, 128);
  mpfr_log(num, lg, MPFR_RNDN);
  mpfr_neg(num, num, MPFR_RNDN);
  mpfr_set_ui(den, q, MPFR_RNDN);
  mpfr_log(den, den, MPFR_RNDN);
  mpfr_div(ratio, num, den, MPFR_RNDN);
  long e = mpfr_get_si(ratio, MPFR_RNDD);
  mpfr_clears(x, lg, num, den, ratio, lq, (mpfr_ptr) nullptr);
  // Exact confirmation of the floor: q^e <= 1/log(i+1) < q^(e+1) cannot be
  // checked exactly (the analytic value is transcendental); the 128-bit
  // computation leaves a wide margin at desk scale.
  lvl.eps_snapped = mpq_pow(rq(static_cast<long>(q)), e);
  return lvl;
}

DICertificate build_sing_prefix(long start_i, long levels,
                                const ApproxPair& root) {
  if (levels < 1) throw std::invalid_argument("build_sing_prefix: levels >= 1");
  if (!root.in_Q())
    throw std::invalid_argument("build_sing_prefix: root not in Q");
  const unsigned q = root.field()->q();
  DICertificate cert;
  cert.root = root;
  cert.chooser = "lex-first";
  LowerNode node = make_lower_node(root, 0);
  for (long j = 0; j < levels; ++j) {
    SingLevel lvl = sing_schedule(q, start_i + j);
    auto groups = enumerate_children(node, lvl.eps_snapped, lvl.N);
    if (groups.empty())
      throw std::runtime_error("build_sing_prefix: no children at level " +
                               std::to_string(start_i + j));
    const ChildGroup* g = nullptr;
    Poly s;
    ApproxPair v = choose_child(node, groups, Chooser::LexFirst, &g, &s);
    cert.steps.push_back(make_step(node, *g, s, v, lvl.eps_snapped));
    cert.eps_schedule.push_back(lvl.eps_snapped);
    cert.N_schedule.push_back(lvl.N);
    cert.eps_analytic.push_back(lvl.eps_analytic);
    node = make_lower_node(v.canonical(), node.depth + 1);
  }
  cert.theta_prefix =
      theta_prefix_from(node.u, node.ball.radius.int_exponent());
  return cert;
}

ReplayReport replay_certificate(const DICertificate& cert) {
  ReplayReport rep;
  if (cert.steps.empty()) {
    rep.fail("certificate has no steps");
    return rep;
  }
  if (!cert.root.in_Q()) rep.fail("root not in Q");
  const unsigned q = cert.root.field()->q();
  long d = cert.root.dim();
  LowerNode node = make_lower_node(cert.root, 0);
  std::vector<ApproxPair> chain;
  chain.push_back(cert.root);
  for (size_t i = 0; i < cert.steps.size(); ++i) {
    const DIStep& st = cert.steps[i];
    const mpq_class& eps = cert.eps_schedule.at(i);
    std::string tag = "step " + std::to_string(i) + ": ";
    if (!st.alpha.primitive()) rep.fail(tag + "alpha not primitive");
    // Box membership.
    for (long t = 0; t + 1 < d; ++t) {
      long cap = st.alpha.n.degree() + node.fl.lambda_exp(d - 1) -
                 node.fl.lambda_exp(t) - 1;
      if (st.alpha.m[t].degree() > cap) rep.fail(tag + "alpha outside C'_n box");
    }
    AlphaLattice al = lambda_alpha(node.fl, st.alpha);
    mpq_class lhs_exp =
        al.wedge_exp + rq((d - 1) * al.scaled.minima_exp.front());
    if (compare_qpow_vs_rpow(q, lhs_exp, eps, d - 1) <= 0)
      rep.fail(tag + "lambda1_hat(alpha) > eps failed");
    FiberBase base = fiber_base(node.fl, st.alpha.full_coords());
    ApproxPair v = fiber_element(node.fl, base, st.s);
    if (!(v == st.child)) rep.fail(tag + "recorded child does not replay");
    if (!zeta_window_ok(q, d, node.u.size_exp(), al.alpha_norm_exp,
                        v.size_exp(), eps))
      rep.fail(tag + "zeta sandwich failed");
    ChildGroup g{st.alpha, st.shell_k, base, 0, al.alpha_norm_exp};
    ChildChecks cc = check_child(node, g, v, eps);
    if (!cc.all()) rep.fail(tag + "child window/identity checks failed");
    LowerNode child_node = make_lower_node(v.canonical(), node.depth + 1);
    if (!verify_nesting(node, child_node)) rep.fail(tag + "nesting failed");
    chain.push_back(v);
    node = std::move(child_node);
  }
  // theta = û_last; every chain node is a best approximation of theta, and
  // the Dirichlet-improvement inequality holds at each link.
  const ApproxPair& last = chain.back();
  LVec theta = last.uhat();
  for (size_t k = 0; k + 1 < chain.size(); ++k) {
    const ApproxPair& uk = chain[k];
    const ApproxPair& unext = chain[k + 1];
    QExp A = approx_quality(theta, uk);
    FareyLattice flk = farey_lattice(uk.canonical());
    std::string tag = "link " + std::to_string(k) + ": ";
    if (!(A < flk.lat.lambda(0)))
      rep.fail(tag + "A(theta,u_k) < lambda_1(u_k) failed");
    // A(theta,u_k)^d * |u_{k+1}| <= eps_k^d
    if (A.is_zero()) {
      rep.fail(tag + "A(theta,u_k) is zero before the last node");
      continue;
    }
    long lhs = d * A.int_exponent() + unext.size_exp();
    if (QExp::pow(lhs).compare_rational(
            q, mpq_pow(cert.eps_schedule.at(k), d)) > 0)
      rep.fail(tag + "A(theta,u_k) <= eps |u_{k+1}|^{-1/d} failed");
  }
  // theta_prefix digits must agree with û_last on the certified window.
  long rad_exp = node.ball.radius.int_exponent();
  long prec = -rad_exp - 1;
  for (long i = 0; i < d; ++i) {
    if (cert.theta_prefix[i].prec() != prec) {
      rep.fail("theta_prefix precision mismatch");
      break;
    }
    Laurent exact = Laurent::from_rational(last.a[i], last.b, prec);
    QExp nn = exact.norm();
    long top = nn.is_zero() ? -prec : std::max(0L, nn.int_exponent());
    bool bad = false;
    for (long e = top; e >= -prec && !bad; --e)
      bad = exact.digit(e) != cert.theta_prefix[i].digit(e);
    if (bad) rep.fail("theta_prefix digits mismatch");
  }
  return rep;
}

XnCount count_Xn(const LowerNode& node, const Poly& n, const mpq_class& eps) {
  long d = node.u.dim();
  if (d < 2) throw std::invalid_argument("count_Xn: d >= 2 required");
  if (n.is_zero()) throw std::invalid_argument("count_Xn: n nonzero");
  const FieldPtr& F = node.u.field();
  const unsigned q = F->q();
  long degn = n.degree();
  long e_u = node.u.size_exp();
  long l_d = node.fl.lambda_exp(d - 1);

  // Scaled (weighted) coordinates for L(m, n), as in lambda_alpha but with
  // polynomial coordinate entries.
  long lmin = node.fl.lambda_exp(0);
  for (long i = 0; i + 1 < d; ++i) lmin = std::min(lmin, node.fl.lambda_exp(i));
  long T = std::max(0L, -lmin);

  XnCount out;
  out.count = 0;
  std::vector<long> win(d - 1, degn - 1);
  for_each_tuple(F, win, [&](const std::vector<Poly>& m) {
    std::vector<Poly> all = m;
    all.push_back(n);
    if (!gcd_all(all).is_one()) return;
    PolyMat S(F, d - 1, d);
    for (long i = 0; i + 1 < d; ++i) {
      S.at(i, i) = n.shifted(node.fl.lambda_exp(i) + T);
      S.at(i, d - 1) = m[i].shifted(node.fl.lambda_exp(i) + T);
    }
    LatticeBasis basis{S, Poly::xpow(F, T)};
    ReducedLattice rl = column_reduce(basis);
    // λ_1(L) > η  <=>  q^{(d-1) λL + e_u + deg n + l_d} > eps^{d-1} q^{(d-1) deg n}
    long lhs = (d - 1) * rl.minima_exp.front() + e_u + degn + l_d -
               (d - 1) * degn;
    if (compare_qpow_vs_rpow(q, rq(lhs), eps, d - 1) > 0) ++out.count;
  });

  if (degn == 0) {
    out.lower_bound = 0;  // phi of a unit counts no polynomials
  } else {
    mpq_class nabs = mpq_pow(rq(q), degn);
    mpq_class phi_n(euler_phi(n));
    mpq_class d1_n(divisor_sum_D1(n));
    out.lower_bound =
        phi_n * (mpq_pow(nabs, d - 2) -
                 mpq_pow(eps, d - 1) * d1_n * mpq_pow(nabs, d - 3));
  }
  out.holds = mpq_class(out.count) >= out.lower_bound;
  return out;
}

ShellAlphaCount shell_alpha_count(const LowerNode& node, const mpq_class& eps,
                                  long k, long N) {
  long d = node.u.dim();
  if (d < 2) throw std::invalid_argument("shell_alpha_count: d >= 2");
  const FieldPtr& F = node.u.field();
  const unsigned q = F->q();
  long e_u = node.u.size_exp();
  long l_d = node.fl.lambda_exp(d - 1);

  ShellAlphaCount out;
  out.count = 0;
  // ||α|| = |n| λ_d in [eps q^{k(d-1)/d - 1} |u|^{-1/d}, eps q^{k(d-1)/d} |u|^{-1/d}]
  // <=> q^{(degn + l_d) d} in [eps^d q^{k(d-1)-d-e_u}, eps^d q^{k(d-1)-e_u}].
  for (long degn = 0; degn <= N; ++degn) {
    long a = degn + l_d;
    mpq_class lo_cmp = rq(a * d - (k * (d - 1) - d - e_u));
    mpq_class hi_cmp = rq(a * d - (k * (d - 1) - e_u));
    if (compare_qpow_vs_rpow(q, lo_cmp, eps, d) < 0) continue;
    if (compare_qpow_vs_rpow(q, hi_cmp, eps, d) > 0) continue;
    for (const Poly& n : all_polys_of_degree(F, degn, false)) {
      std::vector<long> win(d - 1);
      for (long i = 0; i + 1 < d; ++i)
        win[i] = degn + l_d - node.fl.lambda_exp(i) - 1;
      for_each_tuple(F, win, [&](const std::vector<Poly>& m) {
        AlphaVector alpha{m, n};
        if (!alpha.primitive()) return;
        AlphaLattice al = lambda_alpha(node.fl, alpha);
        mpq_class lhs_exp =
            al.wedge_exp + rq((d - 1) * al.scaled.minima_exp.front());
        if (compare_qpow_vs_rpow(q, lhs_exp, eps, d - 1) > 0) ++out.count;
      });
    }
  }
  // k >= T_0  <=>  q^{k(d-1)} eps^d >= q^{d + d l_d + e_u}.
  out.bound_asserted =
      compare_qpow_vs_rpow(q, rq(k * (d - 1) - d - d * l_d - e_u), 1 / eps,
                           d) >= 0;
  mpq_class coeff = (rq(q - 1, q) - mpq_pow(eps, d - 1)) * mpq_pow(eps, d) *
                    rq(q - 1) / mpq_pow(rq(q), d);
  out.lower_bound = coeff * mpq_pow(rq(q), (d - 1) * k);
  out.holds = !out.bound_asserted || mpq_class(out.count) >= out.lower_bound;
  return out;
}

FNSumResult F_N_sum_check(const LowerNode& node, const mpq_class& eps, long N,
                          const mpq_class& s) {
  long d = node.u.dim();
  const FieldPtr& F = node.u.field();
  const unsigned q = F->q();
  const unsigned kext = F->k();
  long e_u = node.u.size_exp();
  long l_1 = node.fl.lambda_exp(0), l_d = node.fl.lambda_exp(d - 1);

  FNSumResult out{QSum(F->p()), QSum(F->p()), false, false, 0, -1, 0.0, 0.0};
  auto groups = enumerate_children(node, eps, N);
  for (const auto& g : groups) {
    // (λ_1(v)/|v|)^s (|u|/λ_1(u))^s with λ_1(v) = |u∧v|/|v|:
    // exponent s*(wedge - 2 e_v + e_u - l_1), e_v = e_u + k.
    long wedge = e_u + g.alpha_norm_exp;
    long e_v = e_u + g.shell_k;
    mpq_class expo = s * rq(wedge - 2 * e_v + e_u - l_1);
    out.lhs.add_term_base_q(mpq_class(g.count), expo, kext);
  }

  // Integer shell range [T_0, T_N]:
  // k >= T_0 <=> q^{k(d-1)} eps^d >= q^{d + d l_d + e_u};
  // k <= T_N <=> q^{k(d-1)} eps^d <= q^{d(N+1) + d l_d + e_u}.
  long k_min = -1, k_max = -1;
  long cap = (d * (N + 2 + l_d + eps_inv_log_cap(q, eps))) / (d - 1) +
             std::abs(e_u) + 4;
  for (long k = 0; k <= cap; ++k) {
    bool ge_T0 = compare_qpow_vs_rpow(
                     q, rq(k * (d - 1) - d - d * l_d - e_u), 1 / eps, d) >= 0;
    bool le_TN =
        compare_qpow_vs_rpow(q, rq(k * (d - 1) - d * (N + 1) - d * l_d - e_u),
                             1 / eps, d) <= 0;
    if (ge_T0 && le_TN) {
      if (k_min < 0) k_min = k;
      k_max = k;
    }
    if (k_min >= 0 &&
        compare_qpow_vs_rpow(q, rq(k * (d - 1) - d - d * l_d - e_u), 1 / eps,
                             d) == 0)
      out.t0_integral = true;
  }
  out.k_min = k_min;
  out.k_max = k_max;

  mpq_class coeff = (rq(q - 1, q) - mpq_pow(eps, d - 1)) * mpq_pow(eps, d) *
                    rq((q - 1) * (q - 1));
  if (k_min >= 0) {
    for (long k = k_min; k <= k_max; ++k) {
      // coeff q^{-(d+s)} q^{-((d+1)s/d - d)k}
      mpq_class expo = -(s + d) - (s * rq(d + 1, d) - d) * k;
      out.rhs.add_term_base_q(coeff, expo, kext);
    }
  }
  QSum diff = out.lhs;
  diff -= out.rhs;
  out.holds = diff.sign() >= 0;
  out.lhs_approx = out.lhs.approx();
  out.rhs_approx = out.rhs.approx();
  return out;
}

}  // namespace ffdioph
