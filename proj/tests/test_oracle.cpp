#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "monocert/assignment.hpp"
#include "monocert/oracle.hpp"

using namespace monocert;

// A V=11 assignment admitting a planar configuration: two pointer chains
// 1<-2<-4<-6<-8<-10 and 1<-3<-5<-7<-9<-11 descending from the unconstrained
// vertex, as on a convex 11-gon whose radial distances decrease along both
// arcs from the lone unstable vertex.
#define MONOCERT_V11_FEASIBLE "1,1,2,3,4,5,6,7,8,9"

namespace {

// Constraint values straight from the coordinates, without any Q matrices:
// g_i = (r_i - r_{j_i})·r_i for i = 2..V.
std::vector<double> constraint_values(const VertexAssignment& a, const ProbePoint& p) {
  const int v = a.vertex_count;
  const int d = p.dim;
  std::vector<double> values;
  for (int i = 2; i <= v; ++i) {
    const double* ri = &p.coordinates[static_cast<std::size_t>(i - 1) * d];
    const double* rj = &p.coordinates[static_cast<std::size_t>(a.j(i) - 1) * d];
    double g = 0.0;
    for (int s = 0; s < d; ++s) g += (ri[s] - rj[s]) * ri[s];
    values.push_back(g);
  }
  return values;
}

}  // namespace

TEST_CASE("no nonzero configuration exists for two vertices") {
  const VertexAssignment a = parse_assignment(2, "1");
  for (int dim : {1, 2, 3})
    CHECK_FALSE(search_feasible_point(a, dim, 50, 7u).has_value());
}

TEST_CASE("the V=2 grid minimum is exactly 2") {
  // Reduced coordinates: one scalar r_1, constraint value 2 r_1^2, minimized
  // over nonzero integers at |r_1| = 1.
  CHECK(brute_force_scan(parse_assignment(2, "1"), 1, 5) == doctest::Approx(2.0));
}

TEST_CASE("V=3 and V=4 grids stay strictly positive") {
  for (int v : {3, 4}) {
    AssignmentStream stream = enumerate_assignments(v);
    while (const auto a = stream.next()) {
      CAPTURE(format_assignment(*a));
      CHECK(brute_force_scan(*a, 1, 10) > 0.0);
    }
  }
}

TEST_CASE("one-dimensional searches come up empty for small V") {
  for (int v = 2; v <= 5; ++v) {
    AssignmentStream stream = enumerate_assignments(v);
    while (const auto a = stream.next()) {
      CAPTURE(format_assignment(*a));
      CHECK_FALSE(search_feasible_point(*a, 1, 200, 11u).has_value());
    }
  }
}

TEST_CASE("searches in higher dimension also fail on certified assignments") {
  // Assignments certified by the integer certificates can have no feasible
  // point in any dimension; the search must agree.
  for (const auto& [v, text] : std::vector<std::pair<int, const char*>>{
           {6, "1,2,3,4,5"}, {8, "1,1,1,1,1,1,1"}, {10, "1,2,3,4,5,6,7,8,9"}}) {
    CAPTURE(text);
    const VertexAssignment a = parse_assignment(v, text);
    for (int dim : {2, 3}) CHECK_FALSE(search_feasible_point(a, dim, 30, 5u).has_value());
  }
}

TEST_CASE("preconditions are enforced") {
  const VertexAssignment a = parse_assignment(3, "1,1");
  CHECK_THROWS_AS(search_feasible_point(a, 0, 10, 1u), std::invalid_argument);
  CHECK_THROWS_AS(search_feasible_point(a, 4, 10, 1u), std::invalid_argument);
  CHECK_THROWS_AS(search_feasible_point(a, 2, 0, 1u), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_scan(a, 2, 5), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_scan(a, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_scan(a, 1, 21), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_scan(parse_assignment(5, "1,1,1,1"), 1, 5),
                  std::invalid_argument);
}

TEST_CASE("a feasible configuration is found for a hard V=11 assignment") {
  // This assignment is one the coefficient search cannot certify; a genuine
  // flat configuration exists in the plane and the multistart search finds it.
  const VertexAssignment a = parse_assignment(11, MONOCERT_V11_FEASIBLE);
  const auto point = search_feasible_point(a, 2, 200, 2026u);
  REQUIRE(point.has_value());
  CHECK(point->vertex_count == 11);
  CHECK(point->dim == 2);
  CHECK(point->penalty <= 1e-12);
  REQUIRE(point->coordinates.size() == 22);

  // Re-derive every reported property from the raw coordinates.
  double max_abs = 0.0;
  for (double x : point->coordinates) max_abs = std::max(max_abs, std::fabs(x));
  CHECK(max_abs == doctest::Approx(1.0).epsilon(1e-12));
  for (int s = 0; s < 2; ++s) {
    double center = 0.0;
    for (int i = 0; i < 11; ++i) center += point->coordinates[static_cast<std::size_t>(2 * i + s)];
    CHECK(std::fabs(center) <= 1e-9);
  }
  for (double g : constraint_values(a, *point)) CHECK(g <= 1e-9);
}

TEST_CASE("a margin demands strict slack") {
  const VertexAssignment a = parse_assignment(11, MONOCERT_V11_FEASIBLE);
  const double margin = 1e-3;
  const auto point = search_feasible_point(a, 2, 400, 4u, margin);
  REQUIRE(point.has_value());
  // After normalization to max |entry| = 1 the squared norm is at least 1, so
  // every constraint sits at least `margin` inside the boundary.
  for (double g : constraint_values(a, *point)) CHECK(g <= -margin + 1e-9);
}

TEST_CASE("probe points format as one row per vertex") {
  ProbePoint p;
  p.vertex_count = 2;
  p.dim = 3;
  p.coordinates = {1.0, -0.5, 0.25, -1.0, 0.5, -0.25};
  const std::string text = format_probe_point(p);
  CHECK(text == "1 -0.5 0.25\n-1 0.5 -0.25\n");
}
