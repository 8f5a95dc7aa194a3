#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "monocert/assignment.hpp"
#include "monocert/symeig.hpp"
#include "monocert/system_builder.hpp"

using namespace monocert;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  return rat(num(rng), den(rng));
}

// x^T M x for a flat rational vector.
Rational quadratic_form(const RatMatrix& m, const std::vector<Rational>& x) {
  REQUIRE(static_cast<int>(x.size()) == m.order());
  Rational acc = 0;
  for (int r = 0; r < m.order(); ++r)
    for (int c = 0; c < m.order(); ++c) acc += m.at(r, c) * x[static_cast<std::size_t>(r)] * x[static_cast<std::size_t>(c)];
  return acc;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  REQUIRE(a.size() == b.size());
  Rational acc = 0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

}  // namespace

TEST_CASE("V=2 system is the single matrix [2]") {
  const QuadraticSystem sys = build_reduced_system(parse_assignment(2, "1"));
  REQUIRE(sys.matrices.size() == 1);
  REQUIRE(sys.q(2).order() == 1);
  CHECK(sys.q(2).at(0, 0) == rat(2));
}

TEST_CASE("V=3 systems match their closed forms") {
  SUBCASE("assignment 1-1") {
    const QuadraticSystem sys = build_reduced_system(parse_assignment(3, "1,1"));
    REQUIRE(sys.matrices.size() == 2);
    const RatMatrix& q2 = sys.q(2);
    CHECK(q2.at(0, 0) == rat(0));
    CHECK(q2.at(0, 1) == rat(-1, 2));
    CHECK(q2.at(1, 0) == rat(-1, 2));
    CHECK(q2.at(1, 1) == rat(1));
    const RatMatrix& q3 = sys.q(3);
    CHECK(q3.at(0, 0) == rat(2));
    CHECK(q3.at(0, 1) == rat(3, 2));
    CHECK(q3.at(1, 0) == rat(3, 2));
    CHECK(q3.at(1, 1) == rat(1));
  }
  SUBCASE("assignment 1-2") {
    const QuadraticSystem sys = build_reduced_system(parse_assignment(3, "1,2"));
    const RatMatrix& q3 = sys.q(3);
    CHECK(q3.at(0, 0) == rat(1));
    CHECK(q3.at(0, 1) == rat(3, 2));
    CHECK(q3.at(1, 0) == rat(3, 2));
    CHECK(q3.at(1, 1) == rat(2));
  }
}

// The defining property: with r_V := -(r_1 + ... + r_{V-1}), the form
// x^T (Q_i ⊗ I_d) x over the stacked reduced coordinates equals
// (r_i - r_{j_i})·r_i computed straight from the vertex vectors. Exact,
// for every assignment with V <= 6 and random rational points.
TEST_CASE("quadratic forms reproduce the pairwise constraints exactly") {
  std::mt19937_64 rng(20260816u);
  for (int v = 2; v <= 6; ++v) {
    AssignmentStream stream = enumerate_assignments(v);
    while (const auto a = stream.next()) {
      const QuadraticSystem sys = build_reduced_system(*a);
      for (int dim : {1, 2, 3}) {
        std::vector<RatMatrix> expanded;
        for (const RatMatrix& q : sys.matrices) expanded.push_back(expand_to_dimension(q, dim));
        for (int trial = 0; trial < 8; ++trial) {
          // Vertex vectors r_1..r_{V-1}, then the forced closing vertex.
          std::vector<std::vector<Rational>> r(static_cast<std::size_t>(v));
          std::vector<Rational> flat;
          for (int i = 0; i < v - 1; ++i) {
            r[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(dim));
            for (int s = 0; s < dim; ++s) {
              r[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] = random_rational(rng);
              flat.push_back(r[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]);
            }
          }
          r[static_cast<std::size_t>(v) - 1].assign(static_cast<std::size_t>(dim), Rational(0));
          for (int i = 0; i < v - 1; ++i)
            for (int s = 0; s < dim; ++s)
              r[static_cast<std::size_t>(v) - 1][static_cast<std::size_t>(s)] -= r[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];

          for (int i = 2; i <= v; ++i) {
            std::vector<Rational> diff = r[static_cast<std::size_t>(i) - 1];
            const std::vector<Rational>& anchor = r[static_cast<std::size_t>(a->j(i)) - 1];
            for (int s = 0; s < dim; ++s) diff[static_cast<std::size_t>(s)] -= anchor[static_cast<std::size_t>(s)];
            const Rational direct = dot(diff, r[static_cast<std::size_t>(i) - 1]);
            const Rational via_form = quadratic_form(expanded[static_cast<std::size_t>(i) - 2], flat);
            CHECK(via_form == direct);
          }
        }
      }
    }
  }
}

TEST_CASE("traces are exactly 1 for interior constraints and V for the closing one") {
  for (int v = 2; v <= 6; ++v) {
    AssignmentStream stream = enumerate_assignments(v);
    while (const auto a = stream.next()) {
      const QuadraticSystem sys = build_reduced_system(*a);
      for (int i = 2; i < v; ++i) CHECK(sys.q(i).trace() == rat(1));
      CHECK(sys.q(v).trace() == rat(v));
    }
  }
}

TEST_CASE("kron_identity interleaves scalar blocks") {
  RatMatrix q(2);
  q.at(0, 0) = rat(2);
  q.at(0, 1) = rat(3, 2);
  q.at(1, 0) = rat(3, 2);
  q.at(1, 1) = rat(1);
  const RatMatrix e = kron_identity(q, 2);
  REQUIRE(e.order() == 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
          CHECK(e.at(2 * a + s, 2 * b + t) == (s == t ? q.at(a, b) : rat(0)));
  CHECK(kron_identity(q, 1) == q);
}

TEST_CASE("expansion replicates every eigenvalue d times") {
  std::mt19937_64 rng(7u);
  RatMatrix q(4);
  for (int r = 0; r < 4; ++r)
    for (int c = r; c < 4; ++c) {
      const Rational value = random_rational(rng);
      q.at(r, c) = value;
      q.at(c, r) = value;
    }
  const SymmetricEigen base = symmetric_eigen(to_doubles(q), 4);
  const SymmetricEigen wide = symmetric_eigen(to_doubles(kron_identity(q, 3)), 12);
  for (int k = 0; k < 4; ++k)
    for (int copy = 0; copy < 3; ++copy)
      CHECK(wide.values[static_cast<std::size_t>(3 * k + copy)] ==
            doctest::Approx(base.values[static_cast<std::size_t>(k)]).epsilon(1e-9));
}

TEST_CASE("float builder agrees bit-for-bit with the rational one") {
  for (int v = 2; v <= 6; ++v) {
    AssignmentStream stream = enumerate_assignments(v);
    while (const auto a = stream.next()) {
      const FloatSystem direct = build_float_system(*a);
      const FloatSystem via_exact = to_float_system(build_reduced_system(*a));
      CHECK(direct.order == v - 1);
      REQUIRE(direct.matrices.size() == via_exact.matrices.size());
      for (std::size_t k = 0; k < direct.matrices.size(); ++k)
        CHECK(direct.matrices[k] == via_exact.matrices[k]);
    }
  }
}
