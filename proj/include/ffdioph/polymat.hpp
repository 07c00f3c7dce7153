#pragma once

#include <vector>

#include "ffdioph/poly.hpp"

namespace ffdioph {

/// Dense matrix over R = F_q[x], column-major.
class PolyMat {
 public:
  PolyMat() : rows_(0), cols_(0) {}
  PolyMat(FieldPtr F, long rows, long cols);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  const FieldPtr& field() const { return F_; }

  const Poly& at(long r, long c) const { return a_.at(c * rows_ + r); }
  Poly& at(long r, long c) { return a_.at(c * rows_ + r); }

  /// max degree over the column's entries; -1 for a zero column.
  long col_degree(long c) const;
  bool col_is_zero(long c) const { return col_degree(c) < 0; }

  void swap_cols(long i, long j);
  /// col_j += c * x^shift * col_i
  void axpy_col(long j, long i, Fe c, long shift);
  /// col_j += f * col_i
  void axpy_col_poly(long j, long i, const Poly& f);
  void scale_col(long j, Fe c);
  void remove_col(long j);
  void append_col(const std::vector<Poly>& col);

  PolyMat transpose() const;
  static PolyMat identity(const FieldPtr& F, long n);
  PolyMat operator*(const PolyMat& o) const;

  bool operator==(const PolyMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  FieldPtr F_;
  long rows_, cols_;
  std::vector<Poly> a_;
};

/// Exact determinant over R via fraction-free (Bareiss) elimination.
Poly bareiss_det(const PolyMat& m);

/// Pivot row of a column: the largest row index among entries attaining the
/// column degree.  -1 for zero columns.
long pivot_row(const PolyMat& m, long c);

struct ReductionResult {
  PolyMat basis;    // column-reduced canonical basis, zero columns dropped
  PolyMat track;    // co-transformed tracking matrix (same column ops)
  bool tracked = false;
  /// Track columns of generators that cancelled to zero (kernel lifts).
  std::vector<std::vector<Poly>> dropped_track;
};

/// Brings the column span of `gens` to the canonical (Popov) column-reduced
/// form: distinct pivot rows, monic pivot entries, all other entries in a
/// pivot row of degree strictly below the pivot degree, columns sorted by
/// (column degree, pivot row).  Apply the same operations to `track` when
/// given (used to carry preimages of the generators).
ReductionResult popov_reduce(const PolyMat& gens, const PolyMat* track = nullptr);

/// Column-reducedness check: distinct pivot rows for all nonzero columns.
bool is_weak_popov(const PolyMat& m);

/// Full canonical-form check (monic pivots, reduced pivot rows, sorted).
bool is_popov(const PolyMat& m);

}  // namespace ffdioph
