#include "monocert/sdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "monocert/symeig.hpp"

namespace monocert {

namespace {

constexpr double kInitialTargetGap = 0.1;
constexpr double kTargetGapFloor = 1e-9;
constexpr int kFailsBeforeShrink = 10;
constexpr double kDeflectionGamma = 1.5;

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) acc += x[k] * y[k];
  return acc;
}

void accumulate(const FloatSystem& sys, const std::vector<double>& c, std::vector<double>& out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < sys.matrices.size(); ++i) {
    const double ci = c[i];
    if (ci == 0.0) continue;
    const std::vector<double>& q = sys.matrices[i];
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += ci * q[k];
  }
}

std::string describe_plateau(double best, int iterations) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "supergradient plateau at z=%.3e after %d iterations", best,
                iterations);
  return buf;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(z_threshold > 0.0)) throw std::invalid_argument("z_threshold must be positive");
  if (!(feasibility_tolerance > 0.0))
    throw std::invalid_argument("feasibility_tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
}

CertificateCandidate solve_certificate(const FloatSystem& sys, const VertexAssignment& a,
                                       const SolverConfig& cfg) {
  cfg.validate();
  a.validate();
  const int n = sys.order;
  const std::size_t m = sys.matrices.size();
  if (n != a.vertex_count - 1 || m != static_cast<std::size_t>(a.vertex_count - 1))
    throw std::invalid_argument("system shape does not match the assignment");

  JacobiWorkspace eig(n);
  std::vector<double> matrix(static_cast<std::size_t>(n) * n);
  std::vector<double> c(m, 1.0 / std::sqrt(static_cast<double>(m)));
  std::vector<double> grad(m), dir(m, 0.0);
  bool have_dir = false;

  std::vector<double> best_c = c;
  double best_phi = -std::numeric_limits<double>::infinity();
  double gap = kInitialTargetGap;
  int fails = 0;
  int iterations_used = 0;

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    iterations_used = iter + 1;
    accumulate(sys, c, matrix);
    const SymmetricEigen& decomp = eig.decompose(matrix);
    const double lam = decomp.values.front();
    const std::size_t kmin =
        static_cast<std::size_t>(std::min_element(c.begin(), c.end()) - c.begin());
    const double phi = std::min(lam, c[kmin]);
    if (!std::isfinite(phi)) throw NumericFailure("objective became non-finite");

    if (phi > best_phi) {
      const double gain = phi - best_phi;
      best_phi = phi;
      best_c = c;
      fails = std::isinf(gain) || gain >= 0.1 * gap ? 0 : fails + 1;
    } else {
      ++fails;
    }
    if (fails >= kFailsBeforeShrink) {
      gap *= 0.5;
      fails = 0;
      if (gap < kTargetGapFloor) break;
    }

    // Supergradient of phi: the eigenvalue branch contributes u'Q_i u for the
    // bottom eigenvector u; the coefficient branch contributes a unit vector.
    if (lam <= c[kmin]) {
      const double* u = decomp.vectors.data();  // ascending order: row 0
      for (std::size_t i = 0; i < m; ++i) {
        const std::vector<double>& q = sys.matrices[i];
        double acc = 0.0;
        for (int r = 0; r < n; ++r) {
          double row = 0.0;
          for (int s = 0; s < n; ++s) row += q[static_cast<std::size_t>(r) * n + s] * u[s];
          acc += u[r] * row;
        }
        grad[i] = acc;
      }
    } else {
      std::fill(grad.begin(), grad.end(), 0.0);
      grad[kmin] = 1.0;
    }

    // Deflect against the previous direction so the iterate stops zig-zagging
    // across the active-eigenvalue kink.
    if (have_dir) {
      const double dd = dot(dir, dir);
      const double beta = dd > 0.0 ? std::max(0.0, -kDeflectionGamma * dot(dir, grad) / dd) : 0.0;
      for (std::size_t i = 0; i < m; ++i) dir[i] = grad[i] + beta * dir[i];
    } else {
      dir = grad;
      have_dir = true;
    }
    const double dir_norm2 = dot(dir, dir);
    if (!(dir_norm2 > 0.0)) break;

    const double target = best_phi + gap;
    const double step = (target - phi) / dir_norm2;
    for (std::size_t i = 0; i < m; ++i) c[i] += step * dir[i];
    const double norm = std::sqrt(dot(c, c));
    if (!std::isfinite(norm)) throw NumericFailure("iterate became non-finite");
    if (norm > 1.0)
      for (double& ci : c) ci /= norm;
  }

  // Deterministic final scoring: cold eigensolve at the best iterate, free of
  // warm-start state.
  accumulate(sys, best_c, matrix);
  const double lam = min_eigenvalue(matrix, n);
  const double cmin = *std::min_element(best_c.begin(), best_c.end());
  const double z = std::min(lam, cmin);
  if (!std::isfinite(z)) throw NumericFailure("final objective became non-finite");
  const double norm = std::sqrt(dot(best_c, best_c));
  if (norm > 1.0 + cfg.feasibility_tolerance)
    throw NumericFailure("iterate escaped the unit ball");

  CertificateCandidate out;
  out.assignment = a;
  out.coefficients = best_c;
  out.attained_z = z;
  out.min_eig = lam;
  if (z >= cfg.z_threshold) {
    out.status = SolveStatus::Certified;
  } else {
    out.status = SolveStatus::Undetermined;
    out.diagnostic = describe_plateau(z, iterations_used);
  }
  return out;
}

CertificateCandidate solve_certificate(const QuadraticSystem& sys, const SolverConfig& cfg) {
  return solve_certificate(to_float_system(sys), sys.assignment, cfg);
}

}  // namespace monocert
