#include "monocert/rational.hpp"

#include <stdexcept>

namespace monocert {

bool RatMatrix::is_symmetric() const {
  for (int i = 0; i < order_; ++i)
    for (int j = i + 1; j < order_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

Rational RatMatrix::trace() const {
  Rational t = 0;
  for (int i = 0; i < order_; ++i) t += at(i, i);
  return t;
}

RatMatrix kron_identity(const RatMatrix& q, int dim) {
  if (dim < 1) throw std::invalid_argument("kron_identity: dim must be >= 1");
  const int n = q.order();
  RatMatrix out(n * dim);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Rational& v = q.at(a, b);
      if (v == 0) continue;
      for (int s = 0; s < dim; ++s) out.at(a * dim + s, b * dim + s) = v;
    }
  return out;
}

std::vector<double> to_doubles(const RatMatrix& q) {
  const int n = q.order();
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = q.at(i, j).get_d();
  return out;
}

}  // namespace monocert
