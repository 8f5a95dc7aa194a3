#include "monocert/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>

#include "monocert/system_builder.hpp"

namespace monocert {

namespace {

// All evaluations happen in the reduced coordinates x (vertices 1..V-1, d
// coordinates each, row-major); the last vertex is implied by the zero sum.
struct PenaltyModel {
  FloatSystem sys;
  int dim = 0;
  int reduced = 0;  // vertex count minus one

  int size() const { return reduced * dim; }

  // q_i(x) = x' (Q_i ⊗ I_d) x for every constraint, and optionally the
  // matrix-vector products needed for gradients.
  void forms(const std::vector<double>& x, std::vector<double>& q,
             std::vector<std::vector<double>>* products) const {
    const std::size_t m = sys.matrices.size();
    q.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const std::vector<double>& mat = sys.matrices[i];
      std::vector<double>* prod = products ? &(*products)[i] : nullptr;
      if (prod) prod->assign(static_cast<std::size_t>(size()), 0.0);
      double acc = 0.0;
      for (int a = 0; a < reduced; ++a)
        for (int s = 0; s < dim; ++s) {
          double row = 0.0;
          for (int b = 0; b < reduced; ++b) {
            const double w = mat[static_cast<std::size_t>(a) * reduced + b];
            if (w != 0.0) row += w * x[static_cast<std::size_t>(b) * dim + s];
          }
          if (prod) (*prod)[static_cast<std::size_t>(a) * dim + s] = row;
          acc += x[static_cast<std::size_t>(a) * dim + s] * row;
        }
      q[i] = acc;
    }
  }
};

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) acc += x[k] * y[k];
  return acc;
}

// Scale-invariant objective h(x) = sum_i max(0, q_i + margin·|x|²)² / |x|⁴.
// Both hinge and normalizer are homogeneous of degree two in x, so minima are
// rays; any representative can later be rescaled at will.
double objective(const PenaltyModel& model, const std::vector<double>& x, double margin,
                 std::vector<double>& q_buf) {
  const double norm2 = dot(x, x);
  if (norm2 == 0.0) return std::numeric_limits<double>::infinity();
  model.forms(x, q_buf, nullptr);
  double f = 0.0;
  for (double q : q_buf) {
    const double hinge = q + margin * norm2;
    if (hinge > 0.0) f += hinge * hinge;
  }
  return f / (norm2 * norm2);
}

double objective_with_gradient(const PenaltyModel& model, const std::vector<double>& x,
                               double margin, std::vector<double>& grad,
                               std::vector<double>& q_buf,
                               std::vector<std::vector<double>>& prod_buf) {
  const double norm2 = dot(x, x);
  model.forms(x, q_buf, &prod_buf);
  double f = 0.0;
  std::vector<double> df(x.size(), 0.0);
  for (std::size_t i = 0; i < q_buf.size(); ++i) {
    const double hinge = q_buf[i] + margin * norm2;
    if (hinge <= 0.0) continue;
    f += hinge * hinge;
    // d hinge² = 2·hinge·(2·A_i x + 2·margin·x)
    const std::vector<double>& ax = prod_buf[i];
    for (std::size_t k = 0; k < x.size(); ++k)
      df[k] += 2.0 * hinge * (2.0 * ax[k] + 2.0 * margin * x[k]);
  }
  const double inv4 = 1.0 / (norm2 * norm2);
  const double h = f * inv4;
  grad.resize(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    grad[k] = df[k] * inv4 - 4.0 * h * x[k] / norm2;
  return h;
}

struct LbfgsPair {
  std::vector<double> s, y;
  double rho = 0.0;
};

// Limited-memory BFGS with Armijo backtracking; returns the best iterate.
void minimize(const PenaltyModel& model, double margin, std::vector<double>& x) {
  constexpr std::size_t kMemory = 7;
  constexpr int kMaxIterations = 300;
  constexpr double kArmijo = 1e-4;

  std::deque<LbfgsPair> history;
  std::vector<double> grad, q_buf, trial, grad_new, direction, alpha;
  std::vector<std::vector<double>> prod_buf(model.sys.matrices.size());
  double h = objective_with_gradient(model, x, margin, grad, q_buf, prod_buf);

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    if (h < 1e-20) break;
    double gmax = 0.0;
    for (double g : grad) gmax = std::max(gmax, std::abs(g));
    if (gmax < 1e-14) break;

    // Two-loop recursion.
    direction = grad;
    alpha.assign(history.size(), 0.0);
    for (std::size_t k = history.size(); k-- > 0;) {
      const LbfgsPair& p = history[k];
      alpha[k] = p.rho * dot(p.s, direction);
      for (std::size_t j = 0; j < direction.size(); ++j) direction[j] -= alpha[k] * p.y[j];
    }
    if (!history.empty()) {
      const LbfgsPair& last = history.back();
      const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
      for (double& v : direction) v *= gamma;
    }
    for (std::size_t k = 0; k < history.size(); ++k) {
      const LbfgsPair& p = history[k];
      const double beta = p.rho * dot(p.y, direction);
      for (std::size_t j = 0; j < direction.size(); ++j)
        direction[j] += (alpha[k] - beta) * p.s[j];
    }
    for (double& v : direction) v = -v;
    double slope = dot(direction, grad);
    if (slope >= 0.0) {  // curvature went bad; fall back to steepest descent
      for (std::size_t j = 0; j < direction.size(); ++j) direction[j] = -grad[j];
      slope = -dot(grad, grad);
      history.clear();
    }

    double step = 1.0;
    double h_new = h;
    bool accepted = false;
    trial.resize(x.size());
    for (int back = 0; back < 50; ++back) {
      for (std::size_t j = 0; j < x.size(); ++j) trial[j] = x[j] + step * direction[j];
      h_new = objective(model, trial, margin, q_buf);
      if (h_new <= h + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    h_new = objective_with_gradient(model, trial, margin, grad_new, q_buf, prod_buf);
    LbfgsPair pair;
    pair.s.resize(x.size());
    pair.y.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      pair.s[j] = trial[j] - x[j];
      pair.y[j] = grad_new[j] - grad[j];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-18) {
      pair.rho = 1.0 / sy;
      history.push_back(std::move(pair));
      if (history.size() > kMemory) history.pop_front();
    }
    x = trial;
    grad = grad_new;
    h = h_new;
  }
}

}  // namespace

std::optional<ProbePoint> search_feasible_point(const VertexAssignment& a, int dim, int restarts,
                                                std::uint64_t seed, double margin) {
  a.validate();
  if (dim < 1 || dim > 3) throw std::invalid_argument("dimension must be 1, 2, or 3");
  if (restarts < 1) throw std::invalid_argument("restart count must be positive");
  if (margin < 0.0) throw std::invalid_argument("margin must be nonnegative");

  PenaltyModel model;
  model.sys = build_float_system(a);
  model.dim = dim;
  model.reduced = a.vertex_count - 1;

  std::vector<double> q_buf;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt + 1));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(model.size()));
    for (double& v : x) v = unit(rng);
    minimize(model, margin, x);

    // Rescale so the full point (with the implied last vertex) has unit
    // max-entry, then score with the plain hinge penalty.
    const int v = a.vertex_count;
    std::vector<double> full(static_cast<std::size_t>(v) * dim, 0.0);
    for (int b = 0; b < model.reduced; ++b)
      for (int s = 0; s < dim; ++s) {
        const double value = x[static_cast<std::size_t>(b) * dim + s];
        full[static_cast<std::size_t>(b) * dim + s] = value;
        full[static_cast<std::size_t>(v - 1) * dim + s] -= value;
      }
    double amax = 0.0;
    for (double c : full) amax = std::max(amax, std::abs(c));
    if (amax == 0.0) continue;
    for (double& c : full) c /= amax;
    for (std::size_t k = 0; k < x.size(); ++k) x[k] /= amax;

    model.forms(x, q_buf, nullptr);
    double penalty = 0.0;
    for (double q : q_buf)
      if (q > 0.0) penalty += q * q;
    if (penalty <= 1e-12) {
      ProbePoint point;
      point.vertex_count = v;
      point.dim = dim;
      point.coordinates = std::move(full);
      point.penalty = penalty;
      return point;
    }
  }
  return std::nullopt;
}

double brute_force_scan(const VertexAssignment& a, int dim, int grid_radius) {
  a.validate();
  if (a.vertex_count > 4)
    throw std::invalid_argument("the grid oracle only handles 4 or fewer vertices");
  if (dim != 1) throw std::invalid_argument("the grid oracle only handles dimension 1");
  if (grid_radius < 1 || grid_radius > 20)
    throw std::invalid_argument("grid radius must be between 1 and 20");

  PenaltyModel model;
  model.sys = build_float_system(a);
  model.dim = dim;
  model.reduced = a.vertex_count - 1;
  const int n = model.size();

  std::vector<double> x(static_cast<std::size_t>(n), static_cast<double>(-grid_radius));
  std::vector<double> q;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    bool zero = true;
    for (double v : x)
      if (v != 0.0) {
        zero = false;
        break;
      }
    if (!zero) {
      model.forms(x, q, nullptr);
      best = std::min(best, *std::max_element(q.begin(), q.end()));
    }
    int k = n - 1;
    while (k >= 0 && x[static_cast<std::size_t>(k)] == grid_radius) {
      x[static_cast<std::size_t>(k)] = static_cast<double>(-grid_radius);
      --k;
    }
    if (k < 0) break;
    x[static_cast<std::size_t>(k)] += 1.0;
  }
  return best;
}

std::string format_probe_point(const ProbePoint& p) {
  std::string out;
  char buf[64];
  for (int v = 0; v < p.vertex_count; ++v) {
    for (int s = 0; s < p.dim; ++s) {
      std::snprintf(buf, sizeof(buf), "%.17g", p.coordinates[static_cast<std::size_t>(v) * p.dim + s]);
      if (s) out.push_back(' ');
      out += buf;
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace monocert
