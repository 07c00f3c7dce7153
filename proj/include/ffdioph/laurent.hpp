#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ffdioph/poly.hpp"
#include "ffdioph/qnum.hpp"

namespace ffdioph {

/// Raised when a norm or comparison cannot be certified at the available
/// precision.  Distinct from a zero result: "zero up to precision" is not 0.
struct PrecisionError : std::runtime_error {
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// Truncated element of the Laurent-series field F_q((x^-1)).
///
/// Digits run from exponent lead() downward; every stored digit is certified.
/// prec() = P means all terms x^e with e >= -P are exact.  When the element
/// is known exactly as f/g the pair is retained, so it can be re-expanded to
/// any precision and norms are always exact.
class Laurent {
 public:
  Laurent() = default;

  static Laurent zero(const FieldPtr& F);
  static Laurent from_poly(const Poly& f);
  /// Expansion of f/g in powers of x^-1, certified down to exponent -prec.
  static Laurent from_rational(const Poly& f, const Poly& g, long prec);
  /// Raw truncation: digits from exponent lead downward, certified to -prec.
  static Laurent truncation(const FieldPtr& F, long lead, std::vector<Fe> digits,
                            long prec);

  const FieldPtr& field() const { return F_; }
  long prec() const { return prec_; }
  bool is_rational() const { return rat_.has_value(); }
  const std::pair<Poly, Poly>& rational() const {
    if (!rat_) throw std::logic_error("Laurent: not in rational mode");
    return *rat_;
  }
  /// True when the value is exactly zero (known), false when nonzero;
  /// throws PrecisionError when only "zero up to precision" is known.
  bool is_zero() const;
  /// Zero down to the certified precision (weaker than is_zero).
  bool is_zero_up_to_prec() const { return digits_.empty(); }

  /// |v| as an exact q-power (or 0); PrecisionError when indeterminate.
  QExp norm() const;
  /// Upper bound on |v| that is always available: q^lead for nonzero
  /// windows, q^(-prec-1) for windows that are zero up to precision.
  QExp norm_upper_bound() const;

  Fe digit(long e) const;  // coefficient of x^e; throws if not certified

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent mul_poly(const Poly& f) const;
  Laurent mul_unit(Fe c) const;

  /// Re-certify to precision P (re-expands rationals; truncates windows).
  Laurent to_precision(long prec) const;

  /// The same digit window with the exact-provenance tag dropped: a genuine
  /// truncation certifying only what the window shows.
  Laurent as_truncation() const;

  /// Split v = P + F with P the exponent >= 0 part and |F| < 1.
  /// Requires certification down to exponent 0.
  std::pair<Poly, Laurent> poly_fractional_split() const;

  std::string str() const;

 private:
  void normalize();
  FieldPtr F_;
  long lead_ = 0;
  std::vector<Fe> digits_;
  long prec_ = 0;
  std::optional<std::pair<Poly, Poly>> rat_;
};

/// Vector in K~^d with the supremum norm.
class LVec {
 public:
  LVec() = default;
  explicit LVec(std::vector<Laurent> entries) : v_(std::move(entries)) {}
  static LVec zero(const FieldPtr& F, long d);
  /// Rational vector (f_i / g_i), exact.
  static LVec from_rationals(const std::vector<std::pair<Poly, Poly>>& entries,
                             long prec);

  long dim() const { return static_cast<long>(v_.size()); }
  const Laurent& operator[](long i) const { return v_.at(i); }
  Laurent& operator[](long i) { return v_.at(i); }
  const std::vector<Laurent>& entries() const { return v_; }

  LVec operator+(const LVec& o) const;
  LVec operator-(const LVec& o) const;
  LVec mul_poly(const Poly& f) const;

  /// Exact sup norm; PrecisionError if no certification is possible.
  QExp sup_norm() const;

 private:
  std::vector<Laurent> v_;
};

/// Closed ball B(x, r) = { y : ||x - y|| <= r }.  Radii are exact q-powers;
/// rational exponents are allowed (used by the covering structures).
struct Ball {
  LVec center;
  QExp radius;  // > 0

  Ball(LVec c, QExp r) : center(std::move(c)), radius(std::move(r)) {
    if (radius.is_zero()) throw std::invalid_argument("Ball: radius must be > 0");
  }
};

/// Distance between closed balls: 0 when ||u-u'|| <= max(r,r'), else
/// exactly ||u-u'||.
QExp ball_distance(const Ball& a, const Ball& b);

/// Containment check for closed balls (ultrametric): B_inner within B_outer
/// iff r_inner <= r_outer and ||c1 - c2|| <= r_outer.
bool ball_contains(const Ball& outer, const Ball& inner);

}  // namespace ffdioph
