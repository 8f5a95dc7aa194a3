#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "monocert/system_builder.hpp"

namespace monocert {

struct SolverConfig {
  double z_threshold = 1e-6;
  double feasibility_tolerance = 1e-9;
  int max_iterations = 200;
  std::uint64_t seed = 0;  // reserved for randomized restarts; the default
                           // method is deterministic and ignores it

  void validate() const;  // throws std::invalid_argument
};

enum class SolveStatus { Certified, Undetermined };

struct CertificateCandidate {
  VertexAssignment assignment;
  std::vector<double> coefficients;  // c_2..c_V
  double attained_z = 0.0;
  double min_eig = 0.0;
  SolveStatus status = SolveStatus::Undetermined;
  std::string diagnostic;
};

// NaN/overflow inside the linear algebra. Distinct from Undetermined, which
// is a legitimate outcome.
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Maximizes z subject to sum c_i Q_i ⪰ zI, ||c|| <= 1, c_i >= z, by projected
// supergradient ascent on phi(c) = min(lambda_min(sum c_i Q_i), min_i c_i)
// over the unit ball with Polyak-type target steps. Certified iff the
// attained z reaches cfg.z_threshold.
CertificateCandidate solve_certificate(const QuadraticSystem& sys, const SolverConfig& cfg);

// Same method on the float image; the campaign driver uses this to skip one
// exact rebuild per assignment.
CertificateCandidate solve_certificate(const FloatSystem& sys, const VertexAssignment& a,
                                       const SolverConfig& cfg);

}  // namespace monocert
