#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace ffdioph {

using Fe = uint8_t;  // element of F_q, encoded 0..q-1

/// F_q = F_p[y]/(modulus), q = p^k.  For k = 1 the modulus is implicit.
/// Elements are encoded as sum c_i p^i over the F_p coordinates c_i of y^i;
/// the total order on F_q used for deterministic enumeration is the numeric
/// order of this encoding (0 < 1 < ... for prime fields, coordinate
/// lexicographic order for extensions).
class Field {
 public:
  /// Prime field F_p.
  explicit Field(unsigned p);
  /// Extension field F_{p^k}; modulus has k+1 coefficients over F_p
  /// (low to high), must be irreducible with nonzero leading coefficient.
  Field(unsigned p, unsigned k, const std::vector<unsigned>& modulus);

  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  unsigned q() const { return q_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Fe add(Fe a, Fe b) const { return add_[idx(a, b)]; }
  Fe sub(Fe a, Fe b) const { return add_[idx(a, neg_[b])]; }
  Fe mul(Fe a, Fe b) const { return mul_[idx(a, b)]; }
  Fe neg(Fe a) const { return neg_[a]; }
  Fe inv(Fe a) const {
    if (a == 0) throw std::domain_error("Field: inverse of zero");
    return inv_[a];
  }
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

  bool operator==(const Field& o) const {
    return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
  }

 private:
  size_t idx(Fe a, Fe b) const { return static_cast<size_t>(a) * q_ + b; }
  void build_tables();

  unsigned p_, k_, q_;
  std::vector<unsigned> modulus_;  // over F_p, size k_+1; empty when k_ == 1
  std::vector<Fe> add_, mul_, neg_, inv_;
};

/// Shared-field handle; all domain objects refer to one of these.
using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(unsigned p);
FieldPtr make_field(unsigned p, unsigned k, const std::vector<unsigned>& modulus);

}  // namespace ffdioph
