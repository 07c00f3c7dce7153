#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ffdioph/field.hpp"
#include "ffdioph/qnum.hpp"

namespace ffdioph {

/// Element of R = F_q[x].  Coefficients low to high, normalized so the
/// leading stored coefficient is nonzero; the zero polynomial stores nothing.
/// |f| = q^deg(f) for f != 0, |0| = 0.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr F) : F_(std::move(F)) {}
  Poly(FieldPtr F, std::vector<Fe> coeffs);

  static Poly zero(const FieldPtr& F) { return Poly(F); }
  static Poly constant(const FieldPtr& F, Fe c);
  static Poly one(const FieldPtr& F) { return constant(F, 1); }
  static Poly x(const FieldPtr& F) { return Poly(F, {0, 1}); }
  /// x^n
  static Poly xpow(const FieldPtr& F, long n);

  const FieldPtr& field() const { return F_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  /// deg(0) = -1 by convention here; absolute value handles the zero case.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Fe coeff(long i) const {
    return (i >= 0 && i < static_cast<long>(c_.size())) ? c_[i] : 0;
  }
  Fe leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<Fe>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  QExp abs() const {
    return c_.empty() ? QExp::zero() : QExp::pow(degree());
  }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(Fe c) const;
  /// Multiply by x^n (n >= 0).
  Poly shifted(long n) const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }

  /// Deterministic total order: by degree, then coefficients high to low
  /// in the field's element order.  Used for canonical tie-breaking.
  std::strong_ordering operator<=>(const Poly& o) const;

  Poly monic() const;

  std::string str() const;  // human-readable, variable "x"

 private:
  void normalize();
  FieldPtr F_;
  std::vector<Fe> c_;
};

/// divmod: f = s*g + r with deg r < deg g.  Throws on g = 0.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
Poly operator/(const Poly& f, const Poly& g);  // exact or truncated quotient
Poly operator%(const Poly& f, const Poly& g);

/// Monic gcd; gcd(0,0) is an error.
Poly gcd(const Poly& f, const Poly& g);

/// gcd of a list (ignores zero entries; error if all zero).
Poly gcd_all(const std::vector<Poly>& fs);

/// Exact quotient; throws if the division leaves a remainder.
Poly exact_div(const Poly& f, const Poly& g);

/// Deterministic enumeration of polynomials of exactly the given degree
/// (degree >= 0): q^degree monic or (q-1)q^degree general polynomials, in
/// the order induced by the field's element order on coefficient tuples
/// (leading coefficient most significant).
class PolyEnumerator {
 public:
  PolyEnumerator(FieldPtr F, long degree, bool monic_only);
  bool next(Poly& out);
  void reset();
  unsigned long count() const;  // total stream length

 private:
  FieldPtr F_;
  long degree_;
  bool monic_;
  std::vector<Fe> cur_;
  bool done_, started_;
};

/// All polynomials f with deg f == degree, as a vector (desk scale).
std::vector<Poly> all_polys_of_degree(const FieldPtr& F, long degree,
                                      bool monic_only);
/// All polynomials of degree <= degree, including 0.
std::vector<Poly> all_polys_up_to_degree(const FieldPtr& F, long degree);

}  // namespace ffdioph
