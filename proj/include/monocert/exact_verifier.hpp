#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monocert/assignment.hpp"
#include "monocert/rational.hpp"
#include "monocert/sdp_solver.hpp"

namespace monocert {

// The disseminated proof object: positive integers c_2..c_V, gcd 1 when
// produced by rounding. The verifier accepts any positive integer vector.
struct IntegerCertificate {
  VertexAssignment assignment;
  std::vector<BigInt> coefficients;  // c_2..c_V
};

struct VerificationReport {
  IntegerCertificate certificate;
  bool valid = false;
  std::vector<Rational> pivots;            // LDL pivots, in elimination order
  std::optional<int> failure_index;        // first nonpositive pivot (0-based)
};

// Rounding produced a zero component; retry with a larger denominator bound.
struct RoundingFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scales the candidate so its smallest coefficient is 1, rounds every
// component to the simplest rational within the fixed-grid error bound
// 1/(2·max_denominator) (continued-fraction walk; denominator is then at
// most max_denominator), clears denominators and divides by the gcd.
// Validity is established only by verify_certificate.
IntegerCertificate round_to_integer_certificate(const CertificateCandidate& cand,
                                                long max_denominator);

// Rebuilds the Q matrices from the assignment (never trusts caller-supplied
// matrices), forms sum c_i Q_i exactly and runs LDL with exact pivots.
// Valid iff every pivot is strictly positive.
VerificationReport verify_certificate(const IntegerCertificate& cert);

// Exact LDL in natural order; true iff all pivots positive. The pivot list
// includes the first nonpositive pivot when one is hit.
std::pair<bool, std::vector<Rational>> check_positive_definite(const RatMatrix& m);

// Gram-matrix cross-check: R must be exactly symmetric of order V. True iff
// R is positive semidefinite, the grand entry sum is exactly zero, and
// R_ii <= R_{i,j_i} for every i in 2..V.
bool verify_gram_conditions(const RatMatrix& gram, const VertexAssignment& a);

}  // namespace monocert
