#include "monocert/symeig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace monocert {

namespace {

constexpr int kMaxSweeps = 100;
constexpr int kWarmRestartPeriod = 256;

void check_shape(const std::vector<double>& matrix, int order) {
  if (order < 1) throw std::invalid_argument("matrix order must be positive");
  if (matrix.size() != static_cast<std::size_t>(order) * order)
    throw std::invalid_argument("matrix storage does not match order " + std::to_string(order));
}

void check_symmetric(const std::vector<double>& matrix, int order) {
  double scale = 0.0;
  for (double x : matrix) scale = std::max(scale, std::abs(x));
  const double tol = 1e-12 * std::max(scale, 1.0);
  for (int a = 0; a < order; ++a)
    for (int b = a + 1; b < order; ++b)
      if (std::abs(matrix[static_cast<std::size_t>(a) * order + b] -
                   matrix[static_cast<std::size_t>(b) * order + a]) > tol)
        throw std::invalid_argument("matrix is not symmetric");
}

// Cyclic Jacobi on the full symmetric matrix a (row-major n×n, destroyed),
// accumulating rotations into basis so that basis·A0·basis' stays diagonal.
// basis is applied from the left: its rows converge to the eigenvectors.
void jacobi_diagonalize(std::vector<double>& a, std::vector<double>& basis, int n) {
  auto at = [n](std::vector<double>& m, int r, int c) -> double& {
    return m[static_cast<std::size_t>(r) * n + c];
  };
  for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) off += std::abs(at(a, p, q));
    if (off == 0.0) return;
    const double thresh = sweep < 4 ? 0.2 * off / (static_cast<double>(n) * n) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        const double small = 100.0 * std::abs(apq);
        // Once an off-diagonal entry is negligible against both diagonal
        // entries it can be zeroed outright instead of rotated away.
        if (sweep > 4 && std::abs(at(a, p, p)) + small == std::abs(at(a, p, p)) &&
            std::abs(at(a, q, q)) + small == std::abs(at(a, q, q))) {
          at(a, p, q) = 0.0;
          at(a, q, p) = 0.0;
          continue;
        }
        if (std::abs(apq) <= thresh) continue;
        const double h = at(a, q, q) - at(a, p, p);
        double t;
        if (std::abs(h) + small == std::abs(h)) {
          t = apq / h;
        } else {
          const double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        at(a, p, p) -= t * apq;
        at(a, q, q) += t * apq;
        at(a, p, q) = 0.0;
        at(a, q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = at(a, r, p);
          const double arq = at(a, r, q);
          at(a, r, p) = arp - s * (arq + arp * tau);
          at(a, r, q) = arq + s * (arp - arq * tau);
          at(a, p, r) = at(a, r, p);
          at(a, q, r) = at(a, r, q);
        }
        for (int r = 0; r < n; ++r) {
          const double bpr = at(basis, p, r);
          const double bqr = at(basis, q, r);
          at(basis, p, r) = bpr - s * (bqr + bpr * tau);
          at(basis, q, r) = bqr + s * (bpr - bqr * tau);
        }
      }
    }
  }
  throw std::runtime_error("eigendecomposition did not converge");
}

// Extract eigenvalues in ascending order, permuting the basis rows to match.
void collect_sorted(const std::vector<double>& a, std::vector<double>& basis, int n,
                    SymmetricEigen& out, std::vector<double>& scratch) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) {
    return a[static_cast<std::size_t>(x) * n + x] < a[static_cast<std::size_t>(y) * n + y];
  });
  out.values.resize(static_cast<std::size_t>(n));
  scratch.resize(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const int src = perm[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(src) * n + src];
    std::copy_n(basis.begin() + static_cast<std::size_t>(src) * n, n,
                scratch.begin() + static_cast<std::size_t>(k) * n);
  }
  basis.swap(scratch);
  out.vectors = basis;
}

void identity(std::vector<double>& m, int n) {
  m.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < n; ++k) m[static_cast<std::size_t>(k) * n + k] = 1.0;
}

}  // namespace

SymmetricEigen symmetric_eigen(const std::vector<double>& matrix, int order) {
  check_shape(matrix, order);
  check_symmetric(matrix, order);
  std::vector<double> a = matrix;
  std::vector<double> basis;
  identity(basis, order);
  jacobi_diagonalize(a, basis, order);
  SymmetricEigen out;
  std::vector<double> scratch;
  collect_sorted(a, basis, order, out, scratch);
  return out;
}

double min_eigenvalue(const std::vector<double>& matrix, int order) {
  return symmetric_eigen(matrix, order).values.front();
}

JacobiWorkspace::JacobiWorkspace(int order) : order_(order) {
  if (order < 1) throw std::invalid_argument("matrix order must be positive");
  work_.resize(static_cast<std::size_t>(order) * order);
  basis_.resize(static_cast<std::size_t>(order) * order);
  tmp_.resize(static_cast<std::size_t>(order) * order);
}

void JacobiWorkspace::reset() {
  warm_ = false;
  uses_ = 0;
}

const SymmetricEigen& JacobiWorkspace::decompose(const std::vector<double>& matrix) {
  check_shape(matrix, order_);
  const int n = order_;
  if (warm_ && ++uses_ >= kWarmRestartPeriod) reset();
  if (!warm_) {
    work_ = matrix;
    identity(basis_, n);
    warm_ = true;
  } else {
    // Rotate the new matrix into the previous eigenframe: work = B·A·B'.
    // When A moved only slightly, work is near-diagonal and the sweep below
    // finishes almost immediately.
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k)
          acc += basis_[static_cast<std::size_t>(r) * n + k] *
                 matrix[static_cast<std::size_t>(k) * n + c];
        tmp_[static_cast<std::size_t>(r) * n + c] = acc;
      }
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k)
          acc += tmp_[static_cast<std::size_t>(r) * n + k] *
                 basis_[static_cast<std::size_t>(c) * n + k];
        work_[static_cast<std::size_t>(r) * n + c] = acc;
      }
    // Symmetrize away the rounding skew before handing to Jacobi.
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c) {
        const double avg = 0.5 * (work_[static_cast<std::size_t>(r) * n + c] +
                                  work_[static_cast<std::size_t>(c) * n + r]);
        work_[static_cast<std::size_t>(r) * n + c] = avg;
        work_[static_cast<std::size_t>(c) * n + r] = avg;
      }
  }
  jacobi_diagonalize(work_, basis_, n);
  collect_sorted(work_, basis_, n, eig_, tmp_);
  return eig_;
}

}  // namespace monocert
