#pragma once

#include <optional>

#include "arco/acg.hpp"

namespace arco {

/// Summary of the inner accelerated run that ended one outer step.
struct InnerSummary {
  Vector v_tilde;             // prox center and inner start
  Vector y, x, s;             // final inner iterates
  double A = 0.0;             // final inner coefficient A_j
  QuadraticLowerModel model;  // final aggregated lower model
  double psi_y = 0.0;         // inner objective at y
  double phi_y = 0.0;         // phi(y) = psi(y) - ||y - v_tilde||^2 / (2 lambda)
  int iters = 0;
};

struct RestartState {
  Vector w, v;
  OuterScalars scalars;
  InnerSummary inner;
  double phi_w = 0.0;
  long prox_count = 0;
  long grad_count = 0;
  int outer_iter = 0;
};

RestartState racg_init(const CompositeProblem& phi, const Vector& w0, double lambda,
                       double mu_f);

/// One outer step: builds the proximal subproblem
///   g = f + ||. - v_tilde||^2 / (2 lambda),  mu = mu_f + 1/lambda,  L = L_f - mu_f,
/// runs the inner iteration until the relative-error restart test fires, then
/// updates w by value comparison and v by the momentum recursion. Returns
/// false when the inner budget ran out before the test fired.
bool racg_outer_step(RestartState& state, const CompositeProblem& phi, double L_f,
                     double mu_f, double lambda, double sigma, int inner_budget);

struct RacgTraceRow {
  int outer_iter = 0;
  int inner_iters = 0;
  long prox_count = 0;
  long grad_count = 0;
  double wall_time_s = 0.0;
  double phi_w = 0.0;
};

struct RacgResult {
  RestartState state;
  bool budget_exhausted = false;
  bool reached_gap = false;
  long prox_at_gap = -1;
  std::vector<RacgTraceRow> trace;
};

/// Doubly accelerated restart loop. Stops when phi(w_k) - phi_ref <= eps
/// (when a reference value is supplied) or when max_outer steps are done.
/// Admissible lambda: lambda >= 1/L_f for mu_f = 0; for mu_f > 0 the inner
/// parameterization additionally needs lambda >= 1/(L_f - 2 mu_f) and
/// lambda <= 1/mu_f. The upper range in terms of R0 is not enforced.
RacgResult run_restarted_acg(const CompositeProblem& phi, const Vector& w0, double L_f,
                             double mu_f, double lambda, double sigma, double eps,
                             int max_outer, int inner_budget = 1000000,
                             std::optional<double> phi_ref = std::nullopt);

enum class HeuristicRestart { none, gradient, speed };

struct HeuristicRunResult {
  Vector y;
  double phi_y = 0.0;
  long prox_count = 0;
  long grad_count = 0;
  int restarts = 0;
  bool reached_gap = false;
  long prox_at_gap = -1;
  std::vector<RacgTraceRow> trace;  // rows at restart boundaries plus the final iterate
};

/// Single-loop accelerated run with an optional restart heuristic.
/// gradient: reset when <x_tilde - y_new, y_new - y_old> > 0.
/// speed: reset when ||y_new - y_old|| < ||y_old - y_older|| and at least
/// k_min steps have passed since the last reset. A reset re-enters the
/// initializer at the current best point (momentum and model cleared).
HeuristicRunResult heuristic_acg_run(const CompositeProblem& phi, const Vector& x0,
                                     double L_f, HeuristicRestart mode, double eps,
                                     std::optional<double> phi_ref, long max_prox,
                                     int k_min = 10);

inline HeuristicRunResult plain_acg_run(const CompositeProblem& phi, const Vector& x0,
                                        double L_f, double eps,
                                        std::optional<double> phi_ref, long max_prox) {
  return heuristic_acg_run(phi, x0, L_f, HeuristicRestart::none, eps, phi_ref, max_prox);
}
inline HeuristicRunResult gradient_restart_run(const CompositeProblem& phi,
                                               const Vector& x0, double L_f, double eps,
                                               std::optional<double> phi_ref,
                                               long max_prox) {
  return heuristic_acg_run(phi, x0, L_f, HeuristicRestart::gradient, eps, phi_ref,
                           max_prox);
}
inline HeuristicRunResult speed_restart_run(const CompositeProblem& phi, const Vector& x0,
                                            double L_f, double eps,
                                            std::optional<double> phi_ref, long max_prox,
                                            int k_min = 10) {
  return heuristic_acg_run(phi, x0, L_f, HeuristicRestart::speed, eps, phi_ref, max_prox,
                           k_min);
}

}  // namespace arco
