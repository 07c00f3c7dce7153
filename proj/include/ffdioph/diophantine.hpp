#pragma once

#include <optional>
#include <vector>

#include "ffdioph/lattice.hpp"
#include "ffdioph/laurent.hpp"

namespace ffdioph {

/// Element u = (a, b) of Q = { gcd(a_1..a_d, b) = 1, b != 0 }.
/// Elements are kept as given (any unit multiple); canonical() returns the
/// F_q^*-orbit representative with monic b.
struct ApproxPair {
  std::vector<Poly> a;
  Poly b;

  long dim() const { return static_cast<long>(a.size()); }
  const FieldPtr& field() const { return b.field(); }
  /// |u| = |b|
  QExp size() const { return b.abs(); }
  long size_exp() const { return b.degree(); }

  bool in_Q() const;
  ApproxPair canonical() const;
  bool same_orbit(const ApproxPair& o) const;
  /// û = a/b as an exact rational vector.
  LVec uhat(long prec = 0) const;

  bool operator==(const ApproxPair& o) const { return a == o.a && b == o.b; }
};

/// Standard basis element (0,...,0,1): û = 0.
ApproxPair unit_pair(const FieldPtr& F, long d);

/// A(theta, u) = || b*theta - a ||, exact; PrecisionError when the norm is
/// not certified at theta's precision.
QExp approx_quality(const LVec& theta, const ApproxPair& u);

/// The Farey lattice Λ_u = span_R{e_1..e_d, û} = π_u(R^{d+1}), reduced, with
/// lifts w_i in R^{d+1} tracking π_u(w_i) = ξ_i and the kernel generator
/// (which is u itself up to a unit).
struct FareyLattice {
  ApproxPair u;
  ReducedLattice lat;          // basis ξ (numerators over denom = b)
  std::vector<std::vector<Poly>> xi_lifts;  // d lifts in R^{d+1}, (a*, b*)
  QExp r_u;                    // λ_1(Λ_u) = r(u)

  long dim() const { return u.dim(); }
  QExp lambda(long i) const { return lat.lambda(i); }
  long lambda_exp(long i) const { return lat.minima_exp.at(i); }
  /// Normalized minima λ̂_i = |u|^{1/d} λ_i; rational q-exponent.
  QExp lambda_hat(long i) const;
  QExp det() const { return lat.det(); }

  /// ξ-coordinates of a lattice vector given by rational entries num/den
  /// (entry-wise), solved exactly; nullopt if it is not in the lattice.
  std::optional<std::vector<Poly>> coordinates_of(
      const std::vector<Poly>& num, const Poly& den) const;

  /// π_u(v) for v=(a',b'): b'û - a' as numerator vector over denom b.
  std::vector<Poly> pi_u_numerator(const ApproxPair& v) const;
};

FareyLattice farey_lattice(const ApproxPair& u);

/// Test oracle: r(u) = min A(û, v) over v in Q, |v| <= |u|, v not in F_q^* u,
/// by direct minimization (via the per-denominator optimal numerator).
QExp r_of_u_bruteforce(const ApproxPair& u);

/// v ∈ H_u  ⟺  v̂ ∈ û + H'_u, H'_u = span_K~{ξ_1..ξ_{d-1}};
/// exact linear-algebra test.
bool in_H_u(const FareyLattice& fl, const ApproxPair& v);

/// #{v ∈ π_u^{-1}(α) ∩ Q : |v| = q^k |u|} by the explicit (a_1+a_0 s,
/// b_1+b_0 s) parametrization; equals (q-1)q^k for primitive α.
struct FiberCount {
  mpz_class count;
  bool alpha_primitive;
  mpz_class primitive_value;  // (q-1) q^k
};
FiberCount fiber_count(const FareyLattice& fl, const std::vector<Poly>& alpha_coords,
                       long k);

/// One step of the fiber parametrization: representative (a1, b1) with
/// |b1| < |b0| and π_u(a1,b1) = α (α given in ξ-coordinates).
struct FiberBase {
  std::vector<Poly> a1;
  Poly b1;
};
FiberBase fiber_base(const FareyLattice& fl, const std::vector<Poly>& alpha_coords);

/// Fiber element (a1 + a0 s, b1 + b0 s).
ApproxPair fiber_element(const FareyLattice& fl, const FiberBase& base,
                         const Poly& s);

struct BestApproxEntry {
  ApproxPair u;
  QExp quality;  // A(theta, u)
};

/// Ordered best approximations of theta with deg b <= degree_bound.
struct BestApproxSeq {
  LVec theta;
  long degree_bound;
  std::vector<BestApproxEntry> entries;
  bool theta_rational = false;  // quality hit exactly 0 inside the horizon
};

/// Exhaustive best-approximation search; one canonical representative per
/// F_q^*-orbit (monic b).  For truncated theta, requires certification to
/// exponent -((d+1)*degree_bound + 4); raises PrecisionError otherwise.
BestApproxSeq best_approx_sequence(const LVec& theta, long degree_bound);

enum class DIVerdict { Pass, Boundary, Fail };

struct DITestEntry {
  long index;
  long size_exp;          // log_q |u_n|
  mpq_class lhs_pow_d;    // (|u_n|^{1/d} r(u_n))^d as exact rational
  DIVerdict verdict;      // vs eps^d: Pass (<), Boundary (=), Fail (>)
};

struct DITestReport {
  std::vector<DITestEntry> entries;
  bool theta_rational_degenerate = false;
  bool prefix_consistent = false;  // all strict from the first passing index
};

/// Exact per-index evaluation of |u_n|^{1/d} r(u_n) < eps
/// (both sides raised to the d-th power; no rounding).
DITestReport di_test(const BestApproxSeq& seq, const mpq_class& eps);

}  // namespace ffdioph
