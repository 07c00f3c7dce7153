#include "ffdioph/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffdioph {

Poly::Poly(FieldPtr F, std::vector<Fe> coeffs)
    : F_(std::move(F)), c_(std::move(coeffs)) {
  for (Fe v : c_)
    if (v >= F_->q()) throw std::invalid_argument("Poly: coefficient out of range");
  normalize();
}

void Poly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const FieldPtr& F, Fe c) {
  Poly f(F);
  if (c != 0) f.c_.push_back(c);
  return f;
}

Poly Poly::xpow(const FieldPtr& F, long n) {
  if (n < 0) throw std::invalid_argument("Poly::xpow: negative exponent");
  Poly f(F);
  f.c_.assign(n + 1, 0);
  f.c_[n] = 1;
  return f;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r(F_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] = F_->add(coeff(i), o.coeff(i));
  r.normalize();
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r(F_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] = F_->sub(coeff(i), o.coeff(i));
  r.normalize();
  return r;
}

Poly Poly::operator-() const {
  Poly r(F_);
  r.c_ = c_;
  for (auto& v : r.c_) v = F_->neg(v);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(F_);
  Poly r(F_);
  r.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      r.c_[i + j] = F_->add(r.c_[i + j], F_->mul(c_[i], o.c_[j]));
  }
  r.normalize();
  return r;
}

Poly Poly::operator*(Fe c) const {
  Poly r(F_);
  if (c == 0) return r;
  r.c_ = c_;
  for (auto& v : r.c_) v = F_->mul(v, c);
  return r;
}

Poly Poly::shifted(long n) const {
  if (n < 0) throw std::invalid_argument("Poly::shifted: negative shift");
  if (is_zero()) return *this;
  Poly r(F_);
  r.c_.assign(c_.size() + n, 0);
  std::copy(c_.begin(), c_.end(), r.c_.begin() + n);
  return r;
}

std::strong_ordering Poly::operator<=>(const Poly& o) const {
  if (degree() != o.degree()) return degree() <=> o.degree();
  for (long i = degree(); i >= 0; --i)
    if (coeff(i) != o.coeff(i)) return coeff(i) <=> o.coeff(i);
  return std::strong_ordering::equal;
}

Poly Poly::monic() const {
  if (is_zero()) throw std::domain_error("Poly::monic: zero polynomial");
  return *this * F_->inv(leading());
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (long i = degree(); i >= 0; --i) {
    Fe c = coeff(i);
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i > 0) {
      s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
  const FieldPtr& F = f.field() ? f.field() : g.field();
  Poly q(F), r = f;
  if (f.is_zero()) return {q, r};
  long dg = g.degree();
  Fe glc_inv = F->inv(g.leading());
  std::vector<Fe> qc;
  if (r.degree() >= dg) qc.assign(r.degree() - dg + 1, 0);
  while (!r.is_zero() && r.degree() >= dg) {
    long shift = r.degree() - dg;
    Fe c = F->mul(r.leading(), glc_inv);
    qc[shift] = c;
    r = r - (g * c).shifted(shift);
  }
  return {Poly(F, qc), r};
}

Poly operator/(const Poly& f, const Poly& g) { return divmod(f, g).first; }
Poly operator%(const Poly& f, const Poly& g) { return divmod(f, g).second; }

Poly gcd(const Poly& f, const Poly& g) {
  if (f.is_zero() && g.is_zero())
    throw std::domain_error("gcd(0,0) is undefined");
  Poly a = f, b = g;
  if (a.is_zero()) return b.monic();
  while (!b.is_zero()) {
    Poly r = a % b;
    a = b;
    b = r;
  }
  return a.monic();
}

Poly gcd_all(const std::vector<Poly>& fs) {
  Poly g;
  bool have = false;
  for (const auto& f : fs) {
    if (f.is_zero()) continue;
    if (!have) {
      g = f.monic();
      have = true;
    } else {
      g = gcd(g, f);
    }
    if (g.is_one()) return g;
  }
  if (!have) throw std::domain_error("gcd_all: all inputs zero");
  return g;
}

Poly exact_div(const Poly& f, const Poly& g) {
  auto [s, r] = divmod(f, g);
  if (!r.is_zero()) throw std::logic_error("exact_div: remainder nonzero");
  return s;
}

PolyEnumerator::PolyEnumerator(FieldPtr F, long degree, bool monic_only)
    : F_(std::move(F)), degree_(degree), monic_(monic_only) {
  if (degree < 0) throw std::invalid_argument("PolyEnumerator: degree < 0");
  reset();
}

void PolyEnumerator::reset() {
  cur_.assign(degree_ + 1, 0);
  cur_[degree_] = 1;
  done_ = false;
  started_ = false;
}

bool PolyEnumerator::next(Poly& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    out = Poly(F_, std::vector<Fe>(cur_.begin(), cur_.end()));
    return true;
  }
  // Increment coefficient tuple, leading coefficient most significant.
  long i = 0;
  long top = degree_;
  while (i <= top) {
    unsigned lim = (i == top && !monic_) ? F_->q() : (i == top ? 2u : F_->q());
    if (static_cast<unsigned>(cur_[i] + 1) < lim) {
      ++cur_[i];
      break;
    }
    cur_[i] = (i == top) ? 1 : 0;
    ++i;
  }
  if (i > top) {
    done_ = true;
    return false;
  }
  out = Poly(F_, std::vector<Fe>(cur_.begin(), cur_.end()));
  return true;
}

unsigned long PolyEnumerator::count() const {
  unsigned long n = monic_ ? 1 : (F_->q() - 1);
  for (long i = 0; i < degree_; ++i) n *= F_->q();
  return n;
}

std::vector<Poly> all_polys_of_degree(const FieldPtr& F, long degree,
                                      bool monic_only) {
  PolyEnumerator en(F, degree, monic_only);
  std::vector<Poly> out;
  out.reserve(en.count());
  Poly f;
  while (en.next(f)) out.push_back(f);
  return out;
}

std::vector<Poly> all_polys_up_to_degree(const FieldPtr& F, long degree) {
  std::vector<Poly> out;
  out.push_back(Poly::zero(F));
  for (long d = 0; d <= degree; ++d)
    for (auto& f : all_polys_of_degree(F, d, false)) out.push_back(f);
  return out;
}

}  // namespace ffdioph
