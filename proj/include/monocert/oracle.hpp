#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monocert/assignment.hpp"

namespace monocert {

// A numerical witness: V vertex positions in d dimensions whose coordinate
// sums vanish and which satisfy every shadow inequality of the assignment.
struct ProbePoint {
  int vertex_count = 0;
  int dim = 0;
  std::vector<double> coordinates;  // row-major V×dim, normalized max|entry|=1
  double penalty = 0.0;             // squared-hinge penalty at the point
};

// Multistart quasi-Newton minimization of the squared-hinge penalty
//   f(r) = sum_i max(0, (r_i - r_{j_i})·r_i + margin)^2
// over the slice sum r_i = 0, for d in {1, 2, 3}. Returns a point with
// f <= 1e-12 (after normalizing to max|entry| = 1, at margin 0) if one is
// found; NotFound is not a proof of infeasibility. margin > 0 demands strict
// slack and is used by exact rationalization cross-checks.
std::optional<ProbePoint> search_feasible_point(const VertexAssignment& a, int dim,
                                                int restarts, std::uint64_t seed,
                                                double margin = 0.0);

// Exhaustive integer-grid oracle for tiny instances (V <= 4, d = 1). Returns
// the minimum over nonzero grid points of max_i r^T Q_i r; strictly positive
// corroborates infeasibility on the grid.
double brute_force_scan(const VertexAssignment& a, int dim, int grid_radius);

// One row per vertex, space-separated, 17 significant digits.
std::string format_probe_point(const ProbePoint& p);

}  // namespace monocert
