#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffdioph/diophantine.hpp"

namespace ffdioph {

/// alpha = sum_{i<d} m_i xi_i + n xi_d in Lambda_u, given by xi-coordinates.
struct AlphaVector {
  std::vector<Poly> m;  // d-1 coefficients
  Poly n;               // != 0

  bool primitive() const;
  std::vector<Poly> full_coords() const;  // (m_1..m_{d-1}, n)
};

/// Node of the strictly nested structure, with ball B(û, λ_1(u)/(q|u|)).
struct LowerNode {
  ApproxPair u;
  FareyLattice fl;
  Ball ball;
  long depth = 0;

  QExp lambda_hat(long i) const { return fl.lambda_hat(i); }
};

LowerNode make_lower_node(const ApproxPair& u, long depth = 0);

/// Reduced (d-1)-dimensional lattice Λ_α inside H'_u, carried in the
/// orthogonal xi-coordinates with the weighted norm
/// ||sum c_i xi_i|| = max |c_i| λ_i (realized by the row scaling x^{λ-exp}).
struct AlphaLattice {
  ReducedLattice scaled;       // weighted-norm reduction
  long det_exp;                // log_q det(Λ_α) in the weighted geometry
  long alpha_norm_exp;         // log_q ||α||
  bool xi_d_dominant;          // ||α|| = |n| λ_d
  mpq_class wedge_exp;         // log_q |u ∧ v| = log_q(|u| ||α||)
  QExp lambda1() const { return scaled.lambda(0); }
  /// λ̂_1(α) = |u∧v|^{1/(d-1)} λ_1(Λ_α); rational q-exponent.
  QExp lambda1_hat(long d) const;
};

/// Requires d >= 2 and n != 0; verifies det(Λ_α) = λ_1..λ_{d-1}/|n| when
/// alpha is primitive.
AlphaLattice lambda_alpha(const FareyLattice& fl, const AlphaVector& alpha);

/// One group of children sharing (alpha, shell k): the full fiber
/// {v in π_u^{-1}(α) ∩ Q : |v| = q^k |u|} intersected with the ζ window.
struct ChildGroup {
  AlphaVector alpha;
  long shell_k;       // |v| = q^k |u|
  FiberBase base;     // fiber parametrization (a1 + a0 s, b1 + b0 s)
  mpz_class count;    // (q-1) q^k (alpha primitive)
  long alpha_norm_exp;
};

/// All of F_N(u, eps) as child groups (can be large; fibers are materialized
/// on demand).  Requires 0 < eps < 1 and d >= 2.
std::vector<ChildGroup> enumerate_children(const LowerNode& node,
                                           const mpq_class& eps, long N);

/// Materialize the fiber elements of one group, in deterministic s-order.
std::vector<ApproxPair> materialize(const LowerNode& node,
                                    const ChildGroup& group);

/// Lemma-level checks for one produced child.
struct ChildChecks {
  bool in_Q = false;
  bool window_ok = false;       // eps/q <= λ̂_1(v) <= eps
  bool size_grows = false;      // |v| > |u|
  bool lambda1_identity = false;  // λ_1(v) = |u∧v|/|v| (independent route)
  bool all() const {
    return in_Q && window_ok && size_grows && lambda1_identity;
  }
};
ChildChecks check_child(const LowerNode& node, const ChildGroup& group,
                        const ApproxPair& v, const mpq_class& eps);

/// Strict nesting of Lemma "B(v̂, λ_1(v)/|v|) ⊂ B(û, λ_1(u)/(q|u|))" plus
/// strictly decreasing node-ball diameters.
bool verify_nesting(const LowerNode& parent, const LowerNode& child);

struct SeparationReport {
  QExp min_distance;   // min over distinct pairs (zero when < 2 children)
  bool bound_holds;    // min_distance >= (eps/(q^{N+1} λ̂_d))^{2d/(d-1)} λ_1/|u|
  unsigned long pairs = 0;
};
SeparationReport verify_separation(const LowerNode& node,
                                   const std::vector<ApproxPair>& children,
                                   const mpq_class& eps, long N);

enum class Chooser { LexFirst, MaxSeparation };

struct DIStep {
  AlphaVector alpha;
  long shell_k;
  Poly s;              // fiber parameter of the chosen child
  ApproxPair child;    // as produced (not canonicalized)
  // recorded exact checks
  bool alpha_primitive, alpha_lambda_ok, zeta_ok, window_ok, nesting_ok,
      lambda1_identity_ok;
};

struct DICertificate {
  ApproxPair root;
  std::vector<mpq_class> eps_schedule;  // one per step
  std::vector<long> N_schedule;
  std::vector<double> eps_analytic;     // pre-snap values (sing variant)
  std::vector<DIStep> steps;
  LVec theta_prefix;   // truncation of û_last certified by the last radius
  std::string chooser;

  const ApproxPair& last_node() const {
    return steps.empty() ? root : steps.back().child;
  }
};

/// Builds a chain of `steps` children below `root` at fixed (eps, N).
/// Throws std::runtime_error naming (eps, N) when a node has no children.
DICertificate build_di_certificate(const mpq_class& eps, long N, long steps,
                                   const ApproxPair& root, Chooser chooser);

struct SingLevel {
  double eps_analytic;   // 1/log(i+1)
  mpq_class eps_snapped; // largest q-power <= analytic value
  long N;                // i+1
};
/// Schedule entry; requires log(i+1) > 1 so that eps < 1.
SingLevel sing_schedule(unsigned q, long i);

/// Nested chain drawing level j's children with (eps_{start+j}, N_{start+j}).
DICertificate build_sing_prefix(long start_i, long levels,
                                const ApproxPair& root);

struct ReplayReport {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(const std::string& msg) {
    ok = false;
    failures.push_back(msg);
  }
};
/// Re-executes every recorded exact check from certificate data alone,
/// including the per-link A(θ, u_k) <= eps |u_{k+1}|^{-1/d} inequality and
/// the best-approximation property A(θ, u_k) < λ_1(u_k).
ReplayReport replay_certificate(const DICertificate& cert);

struct XnCount {
  mpz_class count;      // exact #X_n
  mpq_class lower_bound;  // phi(n)(|n|^{d-2} - eps^{d-1} D_1(n) |n|^{d-3})
  bool holds;           // count >= lower_bound
};
/// Exhaustive count of m in R^{d-1}, ||m|| < |n|, gcd(m,n)=1,
/// λ_1(L(m,n)) > η with η = eps |n| (|u||n| λ_d(u))^{-1/(d-1)}.
XnCount count_Xn(const LowerNode& node, const Poly& n, const mpq_class& eps);

struct ShellAlphaCount {
  mpz_class count;
  mpq_class lower_bound;  // ((q-1)/q - eps^{d-1}) eps^d (q-1)/q^d * q^{(d-1)k}
  bool bound_asserted;    // k >= T_0; below T_0 only the count is reported
  bool holds;
};
/// #{α in Λ_u(eps) ∩ C_N(u) : ||α|| in the shell-k norm window} vs the
/// closed-form lower bound (asserted for k >= T_0).
ShellAlphaCount shell_alpha_count(const LowerNode& node, const mpq_class& eps,
                                  long k, long N);

struct FNSumResult {
  QSum lhs;      // exact sum over F_N(u,eps)
  QSum rhs;      // closed-form lower bound
  bool holds;    // lhs >= rhs
  bool t0_integral;
  long k_min, k_max;  // integer shell range [T_0, T_N]
  double lhs_approx, rhs_approx;
};
/// Proposition-level sum check: sum over F_N(u,eps) of
/// (λ_1(v)/|v|)^s (|u|/λ_1(u))^s >= ((q-1)/q - eps^{d-1}) eps^d (q-1)^2 /
/// q^{d+s} * sum_{T_0<=k<=T_N} q^{-((d+1)s/d - d)k}.
FNSumResult F_N_sum_check(const LowerNode& node, const mpq_class& eps, long N,
                          const mpq_class& s);

}  // namespace ffdioph
