#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "monocert/assignment.hpp"

using namespace monocert;

TEST_CASE("assignment space sizes are factorials of V-1") {
  CHECK(assignment_space_size(2) == 1);
  CHECK(assignment_space_size(3) == 2);
  CHECK(assignment_space_size(4) == 6);
  CHECK(assignment_space_size(8) == 5040);
  CHECK(assignment_space_size(10) == 362880);
  CHECK(assignment_space_size(11) == 3628800);
}

TEST_CASE("vertex counts below 2 are rejected everywhere") {
  CHECK_THROWS_AS(assignment_space_size(1), std::invalid_argument);
  CHECK_THROWS_AS(assignment_space_size(0), std::invalid_argument);
  CHECK_THROWS_AS(assignment_space_size(-3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_assignments(1), std::invalid_argument);
  CHECK_THROWS_AS(assignment_from_index(1, 0), std::invalid_argument);
  VertexAssignment bad;
  bad.vertex_count = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("enumeration is lexicographic with the last choice fastest") {
  AssignmentStream stream = enumerate_assignments(4);
  std::vector<std::string> seen;
  while (const auto a = stream.next()) seen.push_back(format_assignment(*a));
  const std::vector<std::string> expected = {"1-1-1", "1-1-2", "1-1-3",
                                             "1-2-1", "1-2-2", "1-2-3"};
  CHECK(seen == expected);
}

TEST_CASE("the single V=2 assignment is j_2 = 1") {
  AssignmentStream stream = enumerate_assignments(2);
  const auto a = stream.next();
  REQUIRE(a.has_value());
  CHECK(format_assignment(*a) == "1");
  CHECK(a->j(2) == 1);
  CHECK_FALSE(stream.next().has_value());
}

TEST_CASE("index round-trips across the whole space") {
  for (int v : {2, 3, 4, 5, 6}) {
    CAPTURE(v);
    AssignmentStream stream = enumerate_assignments(v);
    std::uint64_t index = 0;
    while (const auto a = stream.next()) {
      CHECK(assignment_index(*a) == index);
      CHECK(assignment_from_index(v, index) == *a);
      ++index;
    }
    CHECK(index == assignment_space_size(v));
  }
  CHECK_THROWS_AS(assignment_from_index(4, 6), std::invalid_argument);
}

TEST_CASE("parsing accepts comma- and dash-joined forms") {
  const VertexAssignment a = parse_assignment(10, "1,2,3,4,5,6,7,8,9");
  const VertexAssignment b = parse_assignment(10, "1-2-3-4-5-6-7-8-9");
  CHECK(a == b);
  CHECK(a.j(2) == 1);
  CHECK(a.j(10) == 9);
  CHECK(format_assignment(a) == "1-2-3-4-5-6-7-8-9");
  CHECK(format_assignment(a, ',') == "1,2,3,4,5,6,7,8,9");
}

TEST_CASE("malformed assignment strings are rejected") {
  CHECK_THROWS_AS(parse_assignment(3, "1,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_assignment(3, "1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_assignment(3, "1,1,1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_assignment(3, "1,3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_assignment(3, "2,1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_assignment(3, "0,1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_assignment(3, ""), std::invalid_argument);
  CHECK_THROWS_AS(parse_assignment(3, "1,,2"), std::invalid_argument);
}
