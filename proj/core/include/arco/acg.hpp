#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "arco/core.hpp"
#include "arco/scalars.hpp"

namespace arco {

/// Quadratic with identity curvature, Theta(x) = const + <lin, x> + (kappa/2)||x||^2.
/// The aggregated lower model of the accelerated iteration is a convex
/// combination of such quadratics with identical curvature, so this
/// representation is closed under the model update and costs O(n) per step.
struct QuadraticLowerModel {
  double constant = 0.0;
  Vector linear;
  double curvature = 0.0;

  double value(const Vector& x) const {
    return constant + linear.dot(x) + 0.5 * curvature * x.squaredNorm();
  }
  Vector gradient(const Vector& x) const { return linear + curvature * x; }
  Vector minimizer() const {
    if (!(curvature > 0.0))
      throw std::logic_error("QuadraticLowerModel: minimizer requires curvature > 0");
    return -linear / curvature;
  }
};

/// State of the accelerated composite gradient iteration on
/// psi = g + h, where g is mu-strongly convex and (L + mu)-smooth.
///
/// Oracle cost per step: 2 evaluations of g (momentum point and candidate)
/// and 1 prox; the counters record exactly that.
struct AcgState {
  Vector x0;       // anchor point (also momentum start)
  Vector x;        // x_j
  Vector y;        // y_j, the monotone iterate
  Vector y_tilde;  // latest prox-gradient candidate
  Vector x_tilde;  // momentum point that produced y_tilde
  AcgScalars scalars;
  QuadraticLowerModel model;  // aggregated lower model Theta_j
  Vector s;                   // (x0 - x_j) / A_j, a subgradient of Theta_j at x_j
  Vector u;                   // 2L (x_tilde - y_tilde)
  Vector grad_at_x_tilde;     // grad g at the momentum point (latest step)
  double psi_y = 0.0;         // psi(y_j)
  double grad_map_norm = 0.0; // (2L+mu) ||x_tilde - y_tilde||, the psi gradient mapping
  long prox_count = 0;
  long grad_count = 0;
  int iter = 0;
};

/// Initializes the iteration; requires L > 0, 0 <= mu <= L, x0 in dom h.
AcgState acg_init(const CompositeProblem& psi, const Vector& x0, double L, double mu);

/// One accelerated step: scalar update, momentum point, prox-gradient
/// candidate, monotone y update (ties go to the fresh candidate), auxiliary x
/// update, and the lower-model aggregation.
void acg_step(const CompositeProblem& psi, AcgState& state);

/// Relative-error restart test
///   ||lambda s_j||^2 + 2 lambda [psi(y_j) - Theta_j(x_j)] <= sigma ||y_j - x0||^2.
/// Only defined after the first step.
bool restart_certificate(const AcgState& state, double lambda, double sigma);

struct MaxIters {
  int iters = 0;
};
struct GradMapTol {
  double eps = 0.0;
  int max_iters = 1000000;
};
struct RestartCond {
  double lambda = 0.0;
  double sigma = 0.0;
  int max_iters = 1000000;
};
using AcgTermination = std::variant<MaxIters, GradMapTol, RestartCond>;

enum class AcgStop { max_iters, grad_map_tol, restart, budget_exhausted };

struct AcgTraceRow {
  int iter;
  double psi_y;
  double grad_map_norm;
  long prox_count;
};

struct AcgRun {
  AcgState state;
  AcgStop reason = AcgStop::max_iters;
  bool budget_exhausted = false;
  std::vector<AcgTraceRow> trace;
};

/// Runs the iteration until the termination condition is met. The gradient
/// mapping mode checks (2L+mu)||x_tilde_{j-1} - y_tilde_j|| <= eps; hitting
/// the iteration cap in a tolerance mode sets budget_exhausted instead of
/// failing. An optional callback observes the state after every step.
AcgRun run_acg(const CompositeProblem& psi, const Vector& x0, double L, double mu,
               const AcgTermination& termination,
               const std::function<void(const AcgState&)>& on_step = nullptr);

}  // namespace arco
