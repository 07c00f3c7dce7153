#include "ffdioph/laurent.hpp"

#include <algorithm>

namespace ffdioph {

Laurent Laurent::zero(const FieldPtr& F) {
  Laurent v;
  v.F_ = F;
  v.prec_ = 0;
  v.rat_ = std::make_pair(Poly::zero(F), Poly::one(F));
  return v;
}

Laurent Laurent::from_poly(const Poly& f) {
  return from_rational(f, Poly::one(f.field()), 0);
}

Laurent Laurent::from_rational(const Poly& f, const Poly& g, long prec) {
  if (g.is_zero())
    throw std::domain_error("Laurent::from_rational: zero denominator");
  Laurent v;
  v.F_ = f.field() ? f.field() : g.field();
  v.prec_ = std::max<long>(prec, 0);
  v.rat_ = std::make_pair(f, g);
  // Digits of f/g down to exponent -prec: divide f*x^M by g, M = prec+deg g.
  long M = v.prec_ + g.degree();
  Poly Q = divmod(f.shifted(M), g).first;
  if (!Q.is_zero()) {
    long lead = Q.degree() - M;
    if (lead >= -v.prec_) {
      v.lead_ = lead;
      v.digits_.resize(lead + v.prec_ + 1);
      for (long e = lead; e >= -v.prec_; --e)
        v.digits_[lead - e] = Q.coeff(e + M);
    }
  }
  v.normalize();
  return v;
}

Laurent Laurent::truncation(const FieldPtr& F, long lead, std::vector<Fe> digits,
                            long prec) {
  Laurent v;
  v.F_ = F;
  v.lead_ = lead;
  v.digits_ = std::move(digits);
  v.prec_ = prec;
  // Drop digits below the certified precision.
  long lowest = lead - static_cast<long>(v.digits_.size()) + 1;
  if (lowest < -prec)
    v.digits_.resize(static_cast<size_t>(lead + prec + 1 > 0 ? lead + prec + 1 : 0));
  v.normalize();
  return v;
}

void Laurent::normalize() {
  size_t i = 0;
  while (i < digits_.size() && digits_[i] == 0) ++i;
  if (i > 0) {
    digits_.erase(digits_.begin(), digits_.begin() + i);
    lead_ -= static_cast<long>(i);
  }
  if (digits_.empty()) lead_ = 0;
}

bool Laurent::is_zero() const {
  if (rat_) return rat_->first.is_zero();
  if (!digits_.empty()) return false;
  throw PrecisionError("Laurent::is_zero: zero up to precision only");
}

QExp Laurent::norm() const {
  if (rat_) {
    if (rat_->first.is_zero()) return QExp::zero();
    return QExp::pow(rat_->first.degree() - rat_->second.degree());
  }
  if (!digits_.empty()) return QExp::pow(lead_);
  throw PrecisionError("Laurent::norm: indeterminate at available precision");
}

QExp Laurent::norm_upper_bound() const {
  if (rat_) return norm();
  if (!digits_.empty()) return QExp::pow(lead_);
  return QExp::pow(-prec_ - 1);
}

Fe Laurent::digit(long e) const {
  if (rat_ && e < -prec_) return to_precision(-e).digit(e);
  if (e < -prec_)
    throw PrecisionError("Laurent::digit: below certified precision");
  if (digits_.empty() || e > lead_) return 0;
  long idx = lead_ - e;
  if (idx >= static_cast<long>(digits_.size())) return 0;
  return digits_[idx];
}

Laurent Laurent::as_truncation() const {
  Laurent v = *this;
  v.rat_.reset();
  return v;
}

Laurent Laurent::to_precision(long prec) const {
  if (rat_) return from_rational(rat_->first, rat_->second, prec);
  if (prec > prec_)
    throw PrecisionError("Laurent::to_precision: cannot refine a truncation");
  Laurent v = *this;
  v.prec_ = prec;
  long lowest = v.lead_ - static_cast<long>(v.digits_.size()) + 1;
  if (!v.digits_.empty() && lowest < -prec) {
    long keep = v.lead_ + prec + 1;
    v.digits_.resize(static_cast<size_t>(std::max<long>(keep, 0)));
  }
  v.normalize();
  return v;
}

Laurent Laurent::operator+(const Laurent& o) const {
  const FieldPtr& F = F_ ? F_ : o.F_;
  if (rat_ && o.rat_) {
    const auto& [f1, g1] = *rat_;
    const auto& [f2, g2] = *o.rat_;
    return from_rational(f1 * g2 + f2 * g1, g1 * g2, std::max(prec_, o.prec_));
  }
  long P = std::min(prec_, o.prec_);
  const Laurent a = rat_ ? to_precision(P) : *this;
  const Laurent b = o.rat_ ? o.to_precision(P) : o;
  long top = std::max(a.digits_.empty() ? -P : a.lead_,
                      b.digits_.empty() ? -P : b.lead_);
  std::vector<Fe> digits;
  for (long e = top; e >= -P; --e) digits.push_back(F->add(a.digit(e), b.digit(e)));
  return truncation(F, top, std::move(digits), P);
}

Laurent Laurent::operator-() const {
  Laurent v = *this;
  for (auto& d : v.digits_) d = F_->neg(d);
  if (v.rat_) v.rat_->first = -v.rat_->first;
  return v;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::mul_poly(const Poly& f) const {
  const FieldPtr& F = F_ ? F_ : f.field();
  if (rat_) {
    const auto& [num, den] = *rat_;
    long P = std::max<long>(prec_ - std::max<long>(f.degree(), 0), 0);
    return from_rational(num * f, den, P);
  }
  if (f.is_zero()) {
    Laurent z;
    z.F_ = F;
    z.prec_ = prec_;  // window scaled by zero stays certified as-is
    z.rat_ = std::make_pair(Poly::zero(F), Poly::one(F));
    return z;
  }
  long P = prec_ - f.degree();
  long top = (digits_.empty() ? -prec_ : lead_) + f.degree();
  std::vector<Fe> digits;
  for (long e = top; e >= -P; --e) {
    Fe acc = 0;
    for (long i = 0; i <= f.degree(); ++i)
      acc = F->add(acc, F->mul(f.coeff(i), digit(e - i)));
    digits.push_back(acc);
  }
  return truncation(F, top, std::move(digits), P);
}

Laurent Laurent::mul_unit(Fe c) const {
  if (c == 0) return zero(F_);
  Laurent v = *this;
  for (auto& d : v.digits_) d = F_->mul(d, c);
  if (v.rat_) v.rat_->first = v.rat_->first * c;
  return v;
}

std::pair<Poly, Laurent> Laurent::poly_fractional_split() const {
  if (!rat_ && prec_ < 0)
    throw PrecisionError("poly_fractional_split: not certified to exponent 0");
  if (rat_) {
    const auto& [f, g] = *rat_;
    auto [s, r] = divmod(f, g);
    return {s, from_rational(r, g, std::max(prec_, 0L))};
  }
  std::vector<Fe> pc;
  if (!digits_.empty() && lead_ >= 0) {
    pc.resize(lead_ + 1);
    for (long e = 0; e <= lead_; ++e) pc[e] = digit(e);
  }
  Poly P(F_, pc);
  long top = std::min<long>(-1, digits_.empty() ? -1 : lead_);
  std::vector<Fe> frac;
  for (long e = top; e >= -prec_; --e) frac.push_back(digit(e));
  return {P, truncation(F_, top, std::move(frac), prec_)};
}

std::string Laurent::str() const {
  std::string s;
  if (digits_.empty()) {
    s = "0";
  } else {
    for (long e = lead_; e >= -prec_; --e) {
      Fe c = digit(e);
      if (c == 0) continue;
      if (!s.empty()) s += "+";
      if (c != 1 || e == 0) s += std::to_string(c);
      if (e != 0) {
        s += "x^" + std::to_string(e);
      }
    }
    if (s.empty()) s = "0";
  }
  s += " (prec " + std::to_string(prec_) + (rat_ ? ", exact)" : ")");
  return s;
}

LVec LVec::zero(const FieldPtr& F, long d) {
  std::vector<Laurent> v(d, Laurent::zero(F));
  return LVec(std::move(v));
}

LVec LVec::from_rationals(const std::vector<std::pair<Poly, Poly>>& entries,
                          long prec) {
  std::vector<Laurent> v;
  v.reserve(entries.size());
  for (const auto& [f, g] : entries) v.push_back(Laurent::from_rational(f, g, prec));
  return LVec(std::move(v));
}

LVec LVec::operator+(const LVec& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("LVec: dimension mismatch");
  std::vector<Laurent> v;
  v.reserve(v_.size());
  for (long i = 0; i < dim(); ++i) v.push_back(v_[i] + o.v_[i]);
  return LVec(std::move(v));
}

LVec LVec::operator-(const LVec& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("LVec: dimension mismatch");
  std::vector<Laurent> v;
  v.reserve(v_.size());
  for (long i = 0; i < dim(); ++i) v.push_back(v_[i] - o.v_[i]);
  return LVec(std::move(v));
}

LVec LVec::mul_poly(const Poly& f) const {
  std::vector<Laurent> v;
  v.reserve(v_.size());
  for (const auto& e : v_) v.push_back(e.mul_poly(f));
  return LVec(std::move(v));
}

QExp LVec::sup_norm() const {
  if (v_.empty()) throw std::invalid_argument("LVec::sup_norm: empty vector");
  QExp best = QExp::zero();
  QExp uncertain_bound = QExp::zero();
  bool have_uncertain = false;
  bool all_exact_zero = true;
  for (const auto& e : v_) {
    bool exact_zero = false;
    try {
      if (e.is_zero()) exact_zero = true;
    } catch (const PrecisionError&) {
      have_uncertain = true;
      uncertain_bound = max(uncertain_bound, e.norm_upper_bound());
      all_exact_zero = false;
      continue;
    }
    if (!exact_zero) {
      best = max(best, e.norm());
      all_exact_zero = false;
    }
  }
  if (all_exact_zero) return QExp::zero();
  if (have_uncertain && !(uncertain_bound <= best) )
    throw PrecisionError("LVec::sup_norm: entry norms not certified");
  if (best.is_zero())
    throw PrecisionError("LVec::sup_norm: norm indeterminate");
  return best;
}

namespace {

// Sup norm of (a - b) if certified, otherwise nullopt when it is certified
// to be <= cap (enough for ball logic), otherwise PrecisionError.
std::optional<QExp> diff_norm_or_below(const LVec& a, const LVec& b,
                                       const QExp& cap) {
  LVec diff = a - b;
  try {
    return diff.sup_norm();
  } catch (const PrecisionError&) {
    QExp ub = QExp::zero();
    for (const auto& e : diff.entries()) ub = max(ub, e.norm_upper_bound());
    if (ub <= cap) return std::nullopt;
    throw;
  }
}

}  // namespace

QExp ball_distance(const Ball& a, const Ball& b) {
  QExp cap = max(a.radius, b.radius);
  auto n = diff_norm_or_below(a.center, b.center, cap);
  if (!n || *n <= cap) return QExp::zero();
  return *n;
}

bool ball_contains(const Ball& outer, const Ball& inner) {
  if (!(inner.radius <= outer.radius)) return false;
  auto n = diff_norm_or_below(outer.center, inner.center, outer.radius);
  return !n || *n <= outer.radius;
}

}  // namespace ffdioph
