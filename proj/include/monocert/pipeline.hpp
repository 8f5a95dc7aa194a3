#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "monocert/sdp_solver.hpp"

namespace monocert {

struct CampaignConfig {
  int vertex_count = 0;
  int workers = 1;
  std::string output_path;
  std::uint64_t checkpoint_interval = 1000;  // assignments per flush
  SolverConfig solver;
  bool resume = false;

  // 0 = full enumeration; otherwise only the lexicographically first `limit`
  // assignments are processed (V=11 sharpness scans).
  std::uint64_t limit = 0;

  // Solver effort ladder: each entry multiplies solver.max_iterations before
  // an assignment is recorded as undetermined or aborts as unverifiable.
  std::vector<int> effort_ladder = {1, 10};

  // Test hook: stop after this many flushed chunks to simulate interruption.
  std::uint64_t stop_after_chunks = 0;

  void validate() const;
};

struct CampaignSummary {
  int vertex_count = 0;
  std::uint64_t total = 0;
  std::uint64_t certified = 0;
  std::uint64_t undetermined = 0;
  std::uint64_t verify_failures = 0;
  double wall_time_seconds = 0.0;
  bool complete = true;  // false when interrupted by stop_after_chunks
};

// A certified assignment failed exact verification after the whole retry
// schedule. This is an implementation bug, not a mathematical outcome.
struct CampaignAborted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(std::uint64_t line, const std::string& what)
      : std::runtime_error(what), line_number(line) {}
  std::uint64_t line_number;
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumerate, solve, round, exactly verify, persist. CSV rows appear in
// lexicographic assignment order; undetermined assignments go to
// `<output>.undetermined`; progress is checkpointed in `<output>.ckpt`.
CampaignSummary run_campaign(const CampaignConfig& cfg);

struct VerifySummary {
  int vertex_count = 0;
  std::uint64_t rows = 0;
  std::uint64_t valid = 0;
  std::uint64_t invalid = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t missing = 0;  // of the (V-1)! assignments, given V
  std::vector<std::pair<std::uint64_t, std::string>> invalid_rows;  // line, reason
  double wall_time_seconds = 0.0;
};

// Re-verifies every row with exact rational arithmetic only. Structural
// damage raises ParseError/SchemaError; semantic failures (nonpositive
// coefficients, non-PD matrices) are per-row verdicts.
VerifySummary verify_file(const std::string& path, int expected_vertex_count = 0,
                          int workers = 1);

// Human-readable report: totals, coefficient magnitude stats, largest pivot
// denominator, undetermined assignments.
std::string report_summary(const std::string& path, int workers = 1);

std::string format_summary(const CampaignSummary& s);
std::string format_summary(const VerifySummary& s);

}  // namespace monocert
