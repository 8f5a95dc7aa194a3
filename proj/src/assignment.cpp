#include "monocert/assignment.hpp"

#include <charconv>
#include <stdexcept>

namespace monocert {

namespace {

// 20! is the largest factorial below 2^64.
constexpr int kMaxFactorialArg = 20;

void check_vertex_count(int vertex_count) {
  if (vertex_count < 2)
    throw std::invalid_argument("vertex count must be at least 2, got " +
                                std::to_string(vertex_count));
  if (vertex_count - 1 > kMaxFactorialArg)
    throw std::invalid_argument("vertex count too large for exhaustive enumeration: " +
                                std::to_string(vertex_count));
}

}  // namespace

void VertexAssignment::validate() const {
  check_vertex_count(vertex_count);
  if (choices.size() != static_cast<std::size_t>(vertex_count - 1))
    throw std::invalid_argument("assignment must have exactly V-1 entries");
  for (int i = 2; i <= vertex_count; ++i) {
    const int ji = j(i);
    if (ji < 1 || ji > i - 1)
      throw std::invalid_argument("assignment entry j_" + std::to_string(i) + "=" +
                                  std::to_string(ji) + " outside 1.." + std::to_string(i - 1));
  }
}

std::uint64_t assignment_space_size(int vertex_count) {
  check_vertex_count(vertex_count);
  std::uint64_t f = 1;
  for (int k = 2; k < vertex_count; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

VertexAssignment assignment_from_index(int vertex_count, std::uint64_t index) {
  const std::uint64_t size = assignment_space_size(vertex_count);
  if (index >= size) throw std::invalid_argument("assignment index out of range");
  VertexAssignment a;
  a.vertex_count = vertex_count;
  a.choices.assign(static_cast<std::size_t>(vertex_count - 1), 1);
  // Mixed radix, least significant digit is j_V.
  for (int i = vertex_count; i >= 2; --i) {
    const std::uint64_t radix = static_cast<std::uint64_t>(i - 1);
    a.choices[static_cast<std::size_t>(i) - 2] = static_cast<int>(index % radix) + 1;
    index /= radix;
  }
  return a;
}

std::uint64_t assignment_index(const VertexAssignment& a) {
  a.validate();
  std::uint64_t index = 0;
  for (int i = 2; i <= a.vertex_count; ++i) {
    index = index * static_cast<std::uint64_t>(i - 1) + static_cast<std::uint64_t>(a.j(i) - 1);
  }
  return index;
}

AssignmentStream::AssignmentStream(int vertex_count) {
  check_vertex_count(vertex_count);
  current_.vertex_count = vertex_count;
  current_.choices.assign(static_cast<std::size_t>(vertex_count - 1), 1);
}

std::optional<VertexAssignment> AssignmentStream::next() {
  if (exhausted_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return current_;
  }
  // Increment the mixed-radix counter; j_V is the fastest digit.
  for (int i = current_.vertex_count; i >= 2; --i) {
    int& digit = current_.choices[static_cast<std::size_t>(i) - 2];
    if (digit < i - 1) {
      ++digit;
      return current_;
    }
    digit = 1;
  }
  exhausted_ = true;
  return std::nullopt;
}

VertexAssignment parse_assignment(int vertex_count, std::string_view text) {
  check_vertex_count(vertex_count);
  VertexAssignment a;
  a.vertex_count = vertex_count;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of(",-", pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view tok = text.substr(pos, end - pos);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw std::invalid_argument("malformed assignment component '" + std::string(tok) + "'");
    a.choices.push_back(value);
    if (end == text.size()) break;
    pos = end + 1;
  }
  a.validate();
  return a;
}

std::string format_assignment(const VertexAssignment& a, char separator) {
  std::string out;
  for (std::size_t k = 0; k < a.choices.size(); ++k) {
    if (k) out.push_back(separator);
    out += std::to_string(a.choices[k]);
  }
  return out;
}

}  // namespace monocert
