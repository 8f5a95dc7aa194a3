#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cstddef>
#include <string>
#include <vector>

namespace monocert {

using Rational = mpq_class;
using BigInt = mpz_class;

// Canonicalized rational from a numerator/denominator pair.
inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

// Dense square matrix of exact rationals, row-major, 0-based indexing.
// Producers of symmetric matrices fill both triangles.
class RatMatrix {
 public:
  RatMatrix() = default;
  explicit RatMatrix(int order)
      : order_(order),
        entries_(static_cast<std::size_t>(order) * static_cast<std::size_t>(order)) {
    assert(order >= 0);
  }

  int order() const { return order_; }

  Rational& at(int row, int col) {
    assert(row >= 0 && row < order_ && col >= 0 && col < order_);
    return entries_[static_cast<std::size_t>(row) * order_ + col];
  }
  const Rational& at(int row, int col) const {
    assert(row >= 0 && row < order_ && col >= 0 && col < order_);
    return entries_[static_cast<std::size_t>(row) * order_ + col];
  }

  bool is_symmetric() const;
  Rational trace() const;

  bool operator==(const RatMatrix& other) const {
    return order_ == other.order_ && entries_ == other.entries_;
  }

 private:
  int order_ = 0;
  std::vector<Rational> entries_;
};

// q ⊗ I_dim: entry (a,b) of q becomes the scalar block q(a,b)·I_dim.
RatMatrix kron_identity(const RatMatrix& q, int dim);

// Exact conversion to doubles. Entries whose value is a small dyadic rational
// (everything this project produces) convert without rounding.
std::vector<double> to_doubles(const RatMatrix& q);

}  // namespace monocert
