#include "monocert/system_builder.hpp"

#include <stdexcept>

namespace monocert {

namespace {

// Reduced matrix for constraint i with 2 <= i < V: the form (r_i - r_{j})' r_i
// touches only coordinates that survive the elimination of r_V, so the pattern
// is a 1 on the diagonal at i and -1/2 at the symmetric pair (i, j).
RatMatrix interior_constraint_matrix(int order, int i, int j) {
  RatMatrix q(order);
  q.at(i - 1, i - 1) = 1;
  q.at(i - 1, j - 1) = rat(-1, 2);
  q.at(j - 1, i - 1) = rat(-1, 2);
  return q;
}

// Reduced matrix for the last constraint. Substituting r_V = -(r_1+...+r_{V-1})
// into (r_V - r_{j})' r_V yields the all-ones form plus an extra unit on the
// diagonal at j and an extra 1/2 on every off-diagonal pair involving j.
RatMatrix closing_constraint_matrix(int order, int j) {
  RatMatrix q(order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) q.at(a, b) = 1;
  q.at(j - 1, j - 1) = 2;
  for (int a = 0; a < order; ++a) {
    if (a == j - 1) continue;
    q.at(j - 1, a) = rat(3, 2);
    q.at(a, j - 1) = rat(3, 2);
  }
  return q;
}

}  // namespace

QuadraticSystem build_reduced_system(const VertexAssignment& assignment) {
  assignment.validate();
  const int v = assignment.vertex_count;
  const int order = v - 1;
  QuadraticSystem system;
  system.assignment = assignment;
  system.matrices.reserve(static_cast<std::size_t>(v - 1));
  for (int i = 2; i < v; ++i)
    system.matrices.push_back(interior_constraint_matrix(order, i, assignment.j(i)));
  system.matrices.push_back(closing_constraint_matrix(order, assignment.j(v)));
  return system;
}

RatMatrix expand_to_dimension(const RatMatrix& reduced, int dim) {
  return kron_identity(reduced, dim);
}

FloatSystem build_float_system(const VertexAssignment& assignment) {
  assignment.validate();
  const int v = assignment.vertex_count;
  const int n = v - 1;
  FloatSystem system;
  system.order = n;
  system.matrices.reserve(static_cast<std::size_t>(v - 1));
  for (int i = 2; i < v; ++i) {
    std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
    const int j = assignment.j(i);
    m[static_cast<std::size_t>(i - 1) * n + (i - 1)] = 1.0;
    m[static_cast<std::size_t>(i - 1) * n + (j - 1)] = -0.5;
    m[static_cast<std::size_t>(j - 1) * n + (i - 1)] = -0.5;
    system.matrices.push_back(std::move(m));
  }
  {
    std::vector<double> m(static_cast<std::size_t>(n) * n, 1.0);
    const int j = assignment.j(v);
    m[static_cast<std::size_t>(j - 1) * n + (j - 1)] = 2.0;
    for (int a = 0; a < n; ++a) {
      if (a == j - 1) continue;
      m[static_cast<std::size_t>(j - 1) * n + a] = 1.5;
      m[static_cast<std::size_t>(a) * n + (j - 1)] = 1.5;
    }
    system.matrices.push_back(std::move(m));
  }
  return system;
}

FloatSystem to_float_system(const QuadraticSystem& system) {
  FloatSystem out;
  out.order = system.matrices.empty() ? 0 : system.matrices.front().order();
  out.matrices.reserve(system.matrices.size());
  for (const RatMatrix& q : system.matrices) out.matrices.push_back(to_doubles(q));
  return out;
}

}  // namespace monocert
