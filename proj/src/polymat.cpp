#include "ffdioph/polymat.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ffdioph {

PolyMat::PolyMat(FieldPtr F, long rows, long cols)
    : F_(std::move(F)), rows_(rows), cols_(cols) {
  a_.assign(static_cast<size_t>(rows) * cols, Poly::zero(F_));
}

long PolyMat::col_degree(long c) const {
  long d = -1;
  for (long r = 0; r < rows_; ++r) d = std::max(d, at(r, c).degree());
  return d;
}

void PolyMat::swap_cols(long i, long j) {
  if (i == j) return;
  for (long r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void PolyMat::axpy_col(long j, long i, Fe c, long shift) {
  for (long r = 0; r < rows_; ++r)
    at(r, j) = at(r, j) + (at(r, i) * c).shifted(shift);
}

void PolyMat::axpy_col_poly(long j, long i, const Poly& f) {
  for (long r = 0; r < rows_; ++r) at(r, j) = at(r, j) + at(r, i) * f;
}

void PolyMat::scale_col(long j, Fe c) {
  for (long r = 0; r < rows_; ++r) at(r, j) = at(r, j) * c;
}

void PolyMat::remove_col(long j) {
  a_.erase(a_.begin() + j * rows_, a_.begin() + (j + 1) * rows_);
  --cols_;
}

void PolyMat::append_col(const std::vector<Poly>& col) {
  if (static_cast<long>(col.size()) != rows_)
    throw std::invalid_argument("PolyMat::append_col: wrong size");
  a_.insert(a_.end(), col.begin(), col.end());
  ++cols_;
}

PolyMat PolyMat::transpose() const {
  PolyMat t(F_, cols_, rows_);
  for (long r = 0; r < rows_; ++r)
    for (long c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

PolyMat PolyMat::identity(const FieldPtr& F, long n) {
  PolyMat m(F, n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = Poly::one(F);
  return m;
}

PolyMat PolyMat::operator*(const PolyMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("PolyMat: size mismatch");
  PolyMat out(F_, rows_, o.cols_);
  for (long r = 0; r < rows_; ++r)
    for (long c = 0; c < o.cols_; ++c) {
      Poly acc = Poly::zero(F_);
      for (long k = 0; k < cols_; ++k) acc = acc + at(r, k) * o.at(k, c);
      out.at(r, c) = acc;
    }
  return out;
}

Poly bareiss_det(const PolyMat& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("bareiss_det: matrix must be square");
  const FieldPtr& F = m.field();
  long n = m.rows();
  if (n == 0) return Poly::one(F);
  PolyMat w = m;
  Poly prev = Poly::one(F);
  Fe sign = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (w.at(k, k).is_zero()) {
      long pr = -1;
      for (long r = k + 1; r < n; ++r)
        if (!w.at(r, k).is_zero()) {
          pr = r;
          break;
        }
      if (pr < 0) return Poly::zero(F);
      for (long c = 0; c < n; ++c) std::swap(w.at(k, c), w.at(pr, c));
      sign = F->neg(sign);
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j)
        w.at(i, j) =
            exact_div(w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j), prev);
    prev = w.at(k, k);
  }
  return w.at(n - 1, n - 1) * sign;
}

long pivot_row(const PolyMat& m, long c) {
  long d = m.col_degree(c);
  if (d < 0) return -1;
  for (long r = m.rows() - 1; r >= 0; --r)
    if (m.at(r, c).degree() == d) return r;
  return -1;
}

namespace {

void weak_popov(PolyMat& m, PolyMat* t,
                std::vector<std::vector<Poly>>* dropped = nullptr) {
  const FieldPtr& F = m.field();
  bool changed = true;
  while (changed) {
    changed = false;
    // Drop zero columns.
    for (long c = m.cols() - 1; c >= 0; --c)
      if (m.col_is_zero(c)) {
        if (t && dropped) {
          std::vector<Poly> lift;
          for (long r = 0; r < t->rows(); ++r) lift.push_back(t->at(r, c));
          dropped->push_back(std::move(lift));
        }
        m.remove_col(c);
        if (t) t->remove_col(c);
      }
    for (long c1 = 0; c1 < m.cols() && !changed; ++c1)
      for (long c2 = 0; c2 < m.cols() && !changed; ++c2) {
        if (c1 == c2) continue;
        long p1 = pivot_row(m, c1), p2 = pivot_row(m, c2);
        if (p1 != p2) continue;
        long d1 = m.col_degree(c1), d2 = m.col_degree(c2);
        long lo = d1 <= d2 ? c1 : c2;
        long hi = d1 <= d2 ? c2 : c1;
        long dlo = std::min(d1, d2), dhi = std::max(d1, d2);
        Fe ratio = F->neg(
            F->div(m.at(p1, hi).coeff(dhi), m.at(p1, lo).coeff(dlo)));
        m.axpy_col(hi, lo, ratio, dhi - dlo);
        if (t) t->axpy_col(hi, lo, ratio, dhi - dlo);
        changed = true;
      }
  }
}

// One normalization pass: monic pivots, then clear pivot-row entries of the
// other columns by full quotients.  Returns true if anything changed.
bool popov_normalize_pass(PolyMat& m, PolyMat* t) {
  const FieldPtr& F = m.field();
  bool changed = false;
  for (long c = 0; c < m.cols(); ++c) {
    long pr = pivot_row(m, c);
    Fe lc = m.at(pr, c).leading();
    if (lc != 1) {
      Fe s = F->inv(lc);
      m.scale_col(c, s);
      if (t) t->scale_col(c, s);
      changed = true;
    }
  }
  for (long i = 0; i < m.cols(); ++i) {
    long ri = pivot_row(m, i);
    const Poly& piv = m.at(ri, i);
    for (long j = 0; j < m.cols(); ++j) {
      if (i == j) continue;
      const Poly& e = m.at(ri, j);
      if (e.degree() >= piv.degree()) {
        Poly f = -(e / piv);
        m.axpy_col_poly(j, i, f);
        if (t) t->axpy_col_poly(j, i, f);
        changed = true;
      }
    }
  }
  return changed;
}

void sort_columns_canonically(PolyMat& m, PolyMat* t) {
  std::vector<long> order(m.cols());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](long a, long b) {
    auto ka = std::make_pair(m.col_degree(a), pivot_row(m, a));
    auto kb = std::make_pair(m.col_degree(b), pivot_row(m, b));
    return ka < kb;
  });
  // Apply the permutation via transpositions.
  std::vector<long> pos(m.cols());
  for (long i = 0; i < m.cols(); ++i) pos[order[i]] = i;
  for (long dst = 0; dst < m.cols(); ++dst) {
    while (pos[dst] != dst) {
      long other = pos[dst];
      m.swap_cols(dst, other);
      if (t) t->swap_cols(dst, other);
      std::swap(pos[dst], pos[other]);
    }
  }
}

}  // namespace

bool is_popov(const PolyMat& m) {
  if (!is_weak_popov(m)) return false;
  for (long i = 0; i < m.cols(); ++i) {
    long ri = pivot_row(m, i);
    const Poly& piv = m.at(ri, i);
    if (!piv.is_monic()) return false;
    for (long j = 0; j < m.cols(); ++j)
      if (j != i && m.at(ri, j).degree() >= piv.degree()) return false;
  }
  for (long c = 0; c + 1 < m.cols(); ++c) {
    auto ka = std::make_pair(m.col_degree(c), pivot_row(m, c));
    auto kb = std::make_pair(m.col_degree(c + 1), pivot_row(m, c + 1));
    if (kb < ka) return false;
  }
  return true;
}

bool is_weak_popov(const PolyMat& m) {
  std::vector<long> seen;
  for (long c = 0; c < m.cols(); ++c) {
    long p = pivot_row(m, c);
    if (p < 0) return false;
    for (long s : seen)
      if (s == p) return false;
    seen.push_back(p);
  }
  return true;
}

ReductionResult popov_reduce(const PolyMat& gens, const PolyMat* track) {
  ReductionResult out;
  out.basis = gens;
  if (track) {
    out.track = *track;
    out.tracked = true;
    if (track->cols() != gens.cols())
      throw std::invalid_argument("popov_reduce: track column mismatch");
  } else {
    out.track = PolyMat(gens.field(), 0, gens.cols());
    out.tracked = false;
  }
  weak_popov(out.basis, &out.track, &out.dropped_track);
  int fuel = 10000;
  while (out.basis.cols() > 0 && fuel-- > 0) {
    if (!popov_normalize_pass(out.basis, &out.track)) break;
    weak_popov(out.basis, &out.track, &out.dropped_track);
  }
  if (out.basis.cols() > 0) sort_columns_canonically(out.basis, &out.track);
  if (out.basis.cols() > 0 && !is_popov(out.basis))
    throw std::logic_error("popov_reduce: reduction failed to stabilize");
  return out;
}

}  // namespace ffdioph
