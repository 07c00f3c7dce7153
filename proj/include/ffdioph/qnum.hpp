#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <stdexcept>
#include <string>

namespace ffdioph {

/// Value of the absolute value / norm: an element of q^Q ∪ {0}.
///
/// Only the exponent is stored; the base q is implicit and must be shared by
/// both operands of any comparison (q > 1, so q^a < q^b iff a < b).  Norms of
/// field elements always have integer exponents; normalized minima and ball
/// radii may carry rational exponents.
class QExp {
 public:
  QExp() : zero_(true) {}
  static QExp zero() { return QExp(); }
  static QExp one() { return QExp::pow(0); }
  static QExp pow(long e) { return QExp(mpq_class(e)); }
  static QExp pow(const mpq_class& e) { return QExp(e); }

  bool is_zero() const { return zero_; }

  /// log_q of the value. Throws on zero.
  const mpq_class& exponent() const {
    if (zero_) throw std::domain_error("QExp: exponent of zero value");
    return e_;
  }
  bool is_integral() const {
    return zero_ || e_.get_den() == 1;
  }
  long int_exponent() const {
    if (!is_integral() || zero_)
      throw std::domain_error("QExp: not an integer q-power");
    return static_cast<long>(e_.get_num().get_si());
  }

  QExp operator*(const QExp& o) const {
    if (zero_ || o.zero_) return zero();
    return QExp(e_ + o.e_);
  }
  QExp operator/(const QExp& o) const {
    if (o.zero_) throw std::domain_error("QExp: division by zero value");
    if (zero_) return zero();
    return QExp(e_ - o.e_);
  }
  QExp pow_rational(const mpq_class& t) const {
    if (zero_) {
      if (t <= 0) throw std::domain_error("QExp: 0 to nonpositive power");
      return zero();
    }
    return QExp(e_ * t);
  }

  friend bool operator==(const QExp& a, const QExp& b) {
    if (a.zero_ || b.zero_) return a.zero_ && b.zero_;
    return a.e_ == b.e_;
  }
  friend bool operator<(const QExp& a, const QExp& b) {
    if (a.zero_) return !b.zero_;
    if (b.zero_) return false;
    return a.e_ < b.e_;
  }
  friend bool operator<=(const QExp& a, const QExp& b) { return a < b || a == b; }
  friend bool operator>(const QExp& a, const QExp& b) { return b < a; }
  friend bool operator>=(const QExp& a, const QExp& b) { return b <= a; }
  friend bool operator!=(const QExp& a, const QExp& b) { return !(a == b); }

  friend QExp max(const QExp& a, const QExp& b) { return a < b ? b : a; }
  friend QExp min(const QExp& a, const QExp& b) { return a < b ? a : b; }

  /// Exact rational value for integer exponents.
  mpq_class to_mpq(unsigned q) const;

  /// sign(q^e - r) for a rational r, exact. Handles rational exponents by
  /// raising both sides to the exponent denominator.
  int compare_rational(unsigned q, const mpq_class& r) const;

  std::string str(unsigned q) const;

 private:
  explicit QExp(const mpq_class& e) : zero_(false), e_(e) {
    e_.canonicalize();
  }
  bool zero_;
  mpq_class e_;
};

/// q^a vs r^b with a,b rational exponents over a common positive base pair:
/// exact sign of q^a - r^b, r a positive rational.
int compare_qpow_vs_rpow(unsigned q, const mpq_class& a, const mpq_class& r,
                         const mpq_class& b);

/// r^e for rational r > 0 and integer e (possibly negative).
mpq_class mpq_pow(const mpq_class& r, long e);

/// Exact finite sum of terms c * p^e with rational coefficients c and rational
/// exponents e over a fixed prime base p.  Supports exact sign determination:
/// terms are grouped modulo the common exponent denominator D (p^{1/D} has
/// degree D over Q since y^D - p is irreducible, so the grouped form is zero
/// iff every group coefficient is zero), and nonzero sums are resolved by
/// refining dyadic enclosures of the D-th roots.
class QSum {
 public:
  explicit QSum(unsigned p) : p_(p) {}

  unsigned base() const { return p_; }
  bool empty() const { return terms_.empty(); }

  void add_term(const mpq_class& coeff, const mpq_class& exponent);
  /// Adds c * q^e where q = p^k; the exponent is rescaled to base p.
  void add_term_base_q(const mpq_class& coeff, const mpq_class& exponent_base_q,
                       unsigned k);

  QSum& operator+=(const QSum& o);
  QSum& operator-=(const QSum& o);
  QSum operator*(const QSum& o) const;
  QSum& scale(const mpq_class& c);

  /// Exact sign: -1, 0, +1.
  int sign() const;

  friend bool operator<=(const QSum& a, const QSum& b) {
    QSum d = a;
    d -= b;
    return d.sign() <= 0;
  }
  friend bool operator<(const QSum& a, const QSum& b) {
    QSum d = a;
    d -= b;
    return d.sign() < 0;
  }
  friend bool operator>=(const QSum& a, const QSum& b) { return b <= a; }

  /// Decimal approximation (for reports only; comparisons never use it).
  double approx() const;

 private:
  unsigned p_;
  std::map<mpq_class, mpq_class> terms_;  // exponent -> nonzero coefficient
};

}  // namespace ffdioph
