#include "ffdioph/field.hpp"

namespace ffdioph {

namespace {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using FpPoly = std::vector<unsigned>;  // over F_p, low to high, normalized

void fp_normalize(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  fp_normalize(c);
  return c;
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, unsigned p) {
  fp_normalize(a);
  unsigned lead_inv = 1;
  {
    unsigned lc = m.back();
    for (unsigned t = 1; t < p; ++t)
      if (lc * t % p == 1) lead_inv = t;
  }
  while (a.size() >= m.size()) {
    unsigned c = a.back() * lead_inv % p;
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i)
      a[shift + i] = (a[shift + i] + p * p - c * m[i] % p) % p;
    fp_normalize(a);
  }
  return a;
}

bool fp_irreducible(const FpPoly& m, unsigned p) {
  // Trial division by all monic polynomials of degree <= deg(m)/2.
  if (m.size() < 2) return false;
  size_t deg = m.size() - 1;
  for (size_t dd = 1; 2 * dd <= deg; ++dd) {
    // Enumerate monic divisor candidates of degree dd.
    std::vector<unsigned> g(dd + 1, 0);
    g[dd] = 1;
    unsigned long total = 1;
    for (size_t i = 0; i < dd; ++i) total *= p;
    for (unsigned long code = 0; code < total; ++code) {
      unsigned long c = code;
      for (size_t i = 0; i < dd; ++i) {
        g[i] = static_cast<unsigned>(c % p);
        c /= p;
      }
      if (fp_mod(m, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

Field::Field(unsigned p) : p_(p), k_(1), q_(p) {
  if (!is_prime(p)) throw std::invalid_argument("Field: p must be prime");
  if (q_ > 64) throw std::invalid_argument("Field: q too large for table kernel");
  build_tables();
}

Field::Field(unsigned p, unsigned k, const std::vector<unsigned>& modulus)
    : p_(p), k_(k), modulus_(modulus) {
  if (!is_prime(p)) throw std::invalid_argument("Field: p must be prime");
  if (k < 1) throw std::invalid_argument("Field: k must be >= 1");
  if (k == 1) {
    q_ = p;
    modulus_.clear();
    build_tables();
    return;
  }
  if (modulus_.size() != k + 1 || modulus_.back() % p == 0)
    throw std::invalid_argument("Field: modulus must have degree k");
  for (auto& c : modulus_) c %= p;
  if (!fp_irreducible(modulus_, p))
    throw std::invalid_argument("Field: modulus is reducible");
  unsigned long q = 1;
  for (unsigned i = 0; i < k; ++i) q *= p;
  if (q > 64) throw std::invalid_argument("Field: q too large for table kernel");
  q_ = static_cast<unsigned>(q);
  build_tables();
}

void Field::build_tables() {
  add_.assign(static_cast<size_t>(q_) * q_, 0);
  mul_.assign(static_cast<size_t>(q_) * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);

  auto decode = [&](Fe a) {
    FpPoly f;
    unsigned v = a;
    while (v) {
      f.push_back(v % p_);
      v /= p_;
    }
    return f;
  };
  auto encode = [&](const FpPoly& f) {
    unsigned v = 0, w = 1;
    for (unsigned c : f) {
      v += c * w;
      w *= p_;
    }
    return static_cast<Fe>(v);
  };

  for (unsigned a = 0; a < q_; ++a) {
    FpPoly fa = decode(static_cast<Fe>(a));
    for (unsigned b = 0; b < q_; ++b) {
      FpPoly fb = decode(static_cast<Fe>(b));
      FpPoly s(std::max(fa.size(), fb.size()), 0);
      for (size_t i = 0; i < s.size(); ++i) {
        unsigned x = (i < fa.size() ? fa[i] : 0) + (i < fb.size() ? fb[i] : 0);
        s[i] = x % p_;
      }
      fp_normalize(s);
      add_[idx(static_cast<Fe>(a), static_cast<Fe>(b))] = encode(s);

      FpPoly m = fp_mul(fa, fb, p_);
      if (k_ > 1) m = fp_mod(m, modulus_, p_);
      mul_[idx(static_cast<Fe>(a), static_cast<Fe>(b))] = encode(m);
    }
  }
  for (unsigned a = 0; a < q_; ++a) {
    for (unsigned b = 0; b < q_; ++b) {
      if (add_[idx(static_cast<Fe>(a), static_cast<Fe>(b))] == 0)
        neg_[a] = static_cast<Fe>(b);
      if (a != 0 && mul_[idx(static_cast<Fe>(a), static_cast<Fe>(b))] == 1)
        inv_[a] = static_cast<Fe>(b);
    }
  }
}

FieldPtr make_field(unsigned p) { return std::make_shared<const Field>(p); }

FieldPtr make_field(unsigned p, unsigned k,
                    const std::vector<unsigned>& modulus) {
  return std::make_shared<const Field>(p, k, modulus);
}

}  // namespace ffdioph
