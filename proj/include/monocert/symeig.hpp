#pragma once

#include <vector>

namespace monocert {

// Full eigendecomposition of a small dense symmetric matrix via cyclic Jacobi
// rotations. values are ascending; row k of vectors (vectors[k*n .. k*n+n))
// is the unit eigenvector for values[k].
struct SymmetricEigen {
  std::vector<double> values;
  std::vector<double> vectors;
};

// matrix is row-major order×order and must be symmetric within 1e-12
// (relative to its largest entry); otherwise std::invalid_argument.
SymmetricEigen symmetric_eigen(const std::vector<double>& matrix, int order);

// Smallest eigenvalue. Same symmetry precondition.
double min_eigenvalue(const std::vector<double>& matrix, int order);

// Repeated eigensolver for a drifting matrix. Reuses the previous eigenbasis
// as the starting frame, which brings nearby matrices to near-diagonal form
// in one or two sweeps.
class JacobiWorkspace {
 public:
  explicit JacobiWorkspace(int order);

  const SymmetricEigen& decompose(const std::vector<double>& matrix);
  void reset();

 private:
  int order_;
  bool warm_ = false;
  int uses_ = 0;  // cold-restart periodically to shed accumulated rounding
  SymmetricEigen eig_;
  std::vector<double> work_;   // matrix being diagonalized
  std::vector<double> basis_;  // accumulated rotations, rows are eigenvectors
  std::vector<double> tmp_;
};

}  // namespace monocert
