#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace monocert {

// The choice (j_2,...,j_V) selecting one shadow inequality per vertex beyond
// the first. choices[k] holds j_{k+2}, so legal values are 1..k+1.
struct VertexAssignment {
  int vertex_count = 0;
  std::vector<int> choices;

  // Accessor in constraint numbering: j(i) for i in [2, vertex_count].
  int j(int i) const { return choices[static_cast<std::size_t>(i) - 2]; }

  // Throws std::invalid_argument if the invariants do not hold.
  void validate() const;

  bool operator==(const VertexAssignment&) const = default;
};

// (V-1)! fits in uint64 for every V this project accepts.
std::uint64_t assignment_space_size(int vertex_count);

// Lexicographic rank <-> assignment. j_V varies fastest.
VertexAssignment assignment_from_index(int vertex_count, std::uint64_t index);
std::uint64_t assignment_index(const VertexAssignment& a);

// Ordered stream over all (V-1)! assignments in lexicographic order.
class AssignmentStream {
 public:
  explicit AssignmentStream(int vertex_count);
  std::optional<VertexAssignment> next();

 private:
  VertexAssignment current_;
  bool started_ = false;
  bool exhausted_ = false;
};

inline AssignmentStream enumerate_assignments(int vertex_count) {
  return AssignmentStream(vertex_count);
}

// Accepts "1,2,3" and "1-2-3". Throws std::invalid_argument on malformed or
// out-of-range input.
VertexAssignment parse_assignment(int vertex_count, std::string_view text);
std::string format_assignment(const VertexAssignment& a, char separator = '-');

}  // namespace monocert
