#include "monocert/exact_verifier.hpp"

#include <algorithm>
#include <stdexcept>

#include "monocert/system_builder.hpp"

namespace monocert {

namespace {

BigInt floor_of(const Rational& v) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return out;
}

// Fraction with the smallest denominator inside the closed interval
// [lo, hi], 0 < lo <= hi, found by walking the shared continued-fraction
// expansion of the endpoints. Smallest denominators keep the least common
// multiple across components — and with it the certificate — small.
Rational simplest_in_interval(Rational lo, Rational hi) {
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // convergent recurrence state
  while (true) {
    const BigInt a = floor_of(lo);
    BigInt last;
    if (lo.get_den() == 1)
      last = a;  // lo itself is the simplest admissible integer part
    else if (Rational(a + 1) <= hi)
      last = a + 1;
    else {
      // No integer in [lo, hi]: emit the digit and recurse on reciprocals.
      const Rational new_lo = 1 / (hi - Rational(a));
      const Rational new_hi = 1 / (lo - Rational(a));
      const BigInt p = a * p1 + p0;
      const BigInt q = a * q1 + q0;
      p0 = p1;
      q0 = q1;
      p1 = p;
      q1 = q;
      lo = new_lo;
      hi = new_hi;
      continue;
    }
    Rational out(last * p1 + p0, last * q1 + q0);
    out.canonicalize();
    return out;
  }
}

// Rational with denominator at most max_den within 1/(2·max_den) of v —
// the same error bound as fixed-grid rounding, at the smallest denominator.
Rational best_rational(const Rational& v, long max_den) {
  const Rational half_step = rat(1, 2) / max_den;
  return simplest_in_interval(v - half_step, v + half_step);
}

}  // namespace

IntegerCertificate round_to_integer_certificate(const CertificateCandidate& cand,
                                                long max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be at least 1");
  cand.assignment.validate();
  if (cand.coefficients.size() != static_cast<std::size_t>(cand.assignment.vertex_count - 1))
    throw std::invalid_argument("candidate has the wrong number of coefficients");

  double cmin = cand.coefficients.front();
  for (double c : cand.coefficients) cmin = std::min(cmin, c);
  if (!(cmin > 0.0)) throw RoundingFailure("candidate has a nonpositive component");

  // Scale so the smallest component sits exactly at 1, then approximate each
  // component by a bounded-denominator rational.
  std::vector<Rational> approx;
  approx.reserve(cand.coefficients.size());
  for (double c : cand.coefficients) {
    const Rational exact(c / cmin);  // exact dyadic image of the quotient
    approx.push_back(best_rational(exact, max_denominator));
  }

  BigInt common = 1;
  for (const Rational& w : approx) common = lcm(common, BigInt(w.get_den()));
  std::vector<BigInt> scaled;
  scaled.reserve(approx.size());
  for (const Rational& w : approx)
    scaled.push_back(BigInt(w.get_num()) * (common / BigInt(w.get_den())));

  BigInt divisor = 0;
  for (const BigInt& n : scaled) divisor = gcd(divisor, n);
  if (divisor == 0) throw RoundingFailure("rounding collapsed every component to zero");
  for (BigInt& n : scaled) {
    n /= divisor;
    if (n == 0) throw RoundingFailure("rounding collapsed a component to zero");
  }

  IntegerCertificate cert;
  cert.assignment = cand.assignment;
  cert.coefficients = std::move(scaled);
  return cert;
}

std::pair<bool, std::vector<Rational>> check_positive_definite(const RatMatrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("positive definiteness needs symmetry");
  const int n = m.order();
  RatMatrix a = m;
  std::vector<Rational> pivots;
  pivots.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Rational pivot = a.at(k, k);
    pivots.push_back(pivot);
    if (pivot <= 0) return {false, pivots};
    for (int r = k + 1; r < n; ++r) {
      if (a.at(r, k) == 0) continue;
      const Rational factor = a.at(r, k) / pivot;
      for (int c = k + 1; c < n; ++c) a.at(r, c) -= factor * a.at(k, c);
    }
  }
  return {true, pivots};
}

VerificationReport verify_certificate(const IntegerCertificate& cert) {
  cert.assignment.validate();
  const int v = cert.assignment.vertex_count;
  if (cert.coefficients.size() != static_cast<std::size_t>(v - 1))
    throw std::invalid_argument("certificate has the wrong number of coefficients");

  VerificationReport report;
  report.certificate = cert;
  for (const BigInt& c : cert.coefficients)
    if (c <= 0) return report;  // valid stays false: the combination needs c_i > 0

  const QuadraticSystem sys = build_reduced_system(cert.assignment);
  RatMatrix sum(v - 1);
  for (std::size_t i = 0; i < sys.matrices.size(); ++i) {
    const Rational ci(cert.coefficients[i]);
    const RatMatrix& q = sys.matrices[i];
    for (int r = 0; r < v - 1; ++r)
      for (int c = 0; c < v - 1; ++c)
        if (q.at(r, c) != 0) sum.at(r, c) += ci * q.at(r, c);
  }

  auto [positive, pivots] = check_positive_definite(sum);
  report.valid = positive;
  report.pivots = std::move(pivots);
  if (!positive) report.failure_index = static_cast<int>(report.pivots.size()) - 1;
  return report;
}

bool verify_gram_conditions(const RatMatrix& gram, const VertexAssignment& a) {
  a.validate();
  if (gram.order() != a.vertex_count)
    throw std::invalid_argument("Gram matrix order must equal the vertex count");
  if (!gram.is_symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
  const int n = gram.order();

  Rational total = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) total += gram.at(r, c);
  if (total != 0) return false;

  for (int i = 2; i <= n; ++i)
    if (gram.at(i - 1, i - 1) > gram.at(i - 1, a.j(i) - 1)) return false;

  // Exact semidefinite check: natural-order elimination where a zero pivot is
  // admissible only when its whole remaining column vanishes.
  RatMatrix work = gram;
  for (int k = 0; k < n; ++k) {
    const Rational pivot = work.at(k, k);
    if (pivot < 0) return false;
    if (pivot == 0) {
      for (int r = k + 1; r < n; ++r)
        if (work.at(r, k) != 0) return false;
      continue;
    }
    for (int r = k + 1; r < n; ++r) {
      if (work.at(r, k) == 0) continue;
      const Rational factor = work.at(r, k) / pivot;
      for (int c = k + 1; c < n; ++c) work.at(r, c) -= factor * work.at(k, c);
    }
  }
  return true;
}

}  // namespace monocert
