#pragma once

#include <optional>
#include <vector>

#include "ffdioph/diophantine.hpp"

namespace ffdioph {

/// Node of the covering structure: u with its Farey lattice and the ball
/// B(û, |u|^{-(1+1/d)}).  Membership in Q_eps means λ̂_1(Λ_u) < eps.
struct UpperNode {
  ApproxPair u;
  FareyLattice fl;
  Ball ball;
};

UpperNode make_upper_node(const ApproxPair& u);

/// λ̂_1(Λ_u) < eps, exact (both sides to the d-th power).
bool in_Q_eps(const UpperNode& node, const mpq_class& eps);

/// Shell of children at |v| = q^k |u| (raw Q-elements, not orbit reps).
struct Shell {
  long k;
  std::vector<ApproxPair> members;
};

/// D(u): v with |u| <= |v|, v in H_u, ||û - v̂|| <= λ_1(Λ_u)/|u|;
/// enumerated through π_u-fibers over B(0, q^k λ_1) ∩ Λ'_u, shells k = 0..cutoff.
std::vector<Shell> enumerate_D(const UpperNode& node, long cutoff);

/// E(u,v,eps): w with |v| < |w|, w not in H_u,
/// ||v̂ - ŵ|| < eps/(|v| |w|^{1/d}); shells k = 1..cutoff.
/// Requires v in D(u) (checked).
std::vector<Shell> enumerate_E(const UpperNode& node, const ApproxPair& v,
                               const mpq_class& eps, long cutoff);

struct ChildSumResult {
  QSum partial;                 // exact truncated sum
  bool within_bound;            // partial <= closed-form bound
  std::vector<long> shell_sizes;
  double partial_approx;
  double bound_approx;
};

/// sum over v in D(u), shells <= cutoff, of (|u|/|v|)^t vs the closed form
/// (q-1) q^(t-1) / (q^(t-d) - 1).  Requires t > d.
ChildSumResult child_sum_D(const UpperNode& node, const mpq_class& t,
                           long cutoff);

/// Analogous for E(u,v,eps) with bound (q-1)(q+q^2)^d eps^d / (q^(t-d)-1).
ChildSumResult child_sum_E(const UpperNode& node, const ApproxPair& v,
                           const mpq_class& eps, const mpq_class& t,
                           long cutoff);

/// One admissible link u -> w with witness v (w in E(u, v, eps), v in D(u)).
struct AdmissibleLink {
  long from_index;     // index into the best-approximation sequence
  long witness_index;  // v = u_{m-1}
  long to_index;       // w = u_m
  bool d_checks;       // v in D(u), re-verified from the definitions
  bool e_checks;       // w in E(u,v,eps), re-verified
};

enum class AdmissibleStatus { Complete, HorizonExhausted, NotInQEps, Degenerate };

struct AdmissibleResult {
  AdmissibleStatus status;
  long start_index = -1;  // n_1
  std::vector<AdmissibleLink> links;
  BestApproxSeq seq;
};

/// Extracts the σ_eps-admissible subsequence of the best approximations of
/// theta: n_{i+1} is the smallest m > n_i with u_m not in H_{u_{n_i}}.
AdmissibleResult admissible_from_theta(const LVec& theta, const mpq_class& eps,
                                       long degree_bound);

struct ContractionResult {
  bool holds;             // certified: truncated sum + geometric tail <= 1
  QSum partial_dedup;     // exact sum over distinct enumerated σ_eps children
  double partial_approx;
  double upper_bound_approx;  // double-counted partial + tails
};

/// Checks sum over σ_eps(u) of (|u|/|w|)^((1+1/d)s) <= 1 with a rigorous
/// geometric tail from the two shell-count bounds.  Requires
/// d^2/(d+1) < s <= d.
ContractionResult contraction_check(const UpperNode& node, const mpq_class& s,
                                    const mpq_class& eps, long cutoff);

}  // namespace ffdioph
