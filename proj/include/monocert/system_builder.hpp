#pragma once

#include <vector>

#include "monocert/assignment.hpp"
#include "monocert/rational.hpp"

namespace monocert {

// The reduced, dimension-free system: symmetric rational matrices Q_2..Q_V of
// order V-1 such that, with r_V := -sum_{i<V} r_i, the quadratic form
// r^T Q_i r equals (r_i - r_{j_i})·r_i in one dimension. Entries are exact
// rationals with denominators 1 or 2.
struct QuadraticSystem {
  VertexAssignment assignment;
  std::vector<RatMatrix> matrices;  // matrices[k] is Q_{k+2}

  // Accessor in constraint numbering: q(i) for i in [2, V].
  const RatMatrix& q(int i) const { return matrices[static_cast<std::size_t>(i) - 2]; }
};

QuadraticSystem build_reduced_system(const VertexAssignment& a);

// Q ⊗ I_dim. Cross-validation only; the pipeline works on the reduced form.
RatMatrix expand_to_dimension(const RatMatrix& q, int dim);

// Float image of the reduced system. All entries are multiples of 1/2, so the
// conversion is exact; a test pins this against the rational builder.
struct FloatSystem {
  int order = 0;                               // V-1
  std::vector<std::vector<double>> matrices;    // row-major, Q_2..Q_V
};

FloatSystem build_float_system(const VertexAssignment& a);
FloatSystem to_float_system(const QuadraticSystem& sys);

}  // namespace monocert
