#pragma once

#include <optional>
#include <vector>

#include "arco/acg.hpp"

namespace arco {

enum class InnerCheck {
  direct,    // gradient mapping of the unperturbed augmented Lagrangian, one extra prox
  surrogate  // (2L+mu)||x_tilde - y_tilde|| of the perturbed inner objective
};

struct IalmConfig {
  double rho = 1.0;
  double eps = 1e-3;
  double eps0 = 1.0;
  double alpha = 0.5;        // in (0,1)
  double sigma = 0.5;        // in (0,1), subject to 2 sigma rho eps <= D
  int max_outer = 1000;
  long inner_budget = 500000;  // per outer step
  InnerCheck inner_check = InnerCheck::direct;
  bool verify_certificates = false;

  /// eps0 = eps, sigma = 1/2, rho = 1/eps.
  static IalmConfig theorem_defaults(double eps);
  /// rho = 1, alpha = 0.7, eps0 = 100, sigma = 1/2.
  static IalmConfig practical_defaults(double eps);

  void validate(double diameter) const;
};

struct IalmState {
  Vector x;
  Vector lambda;
  double eps_k = 0.0;
  int k = 0;
  long prox_count = 0;
  long grad_count = 0;
  long inner_iters = 0;
};

struct AlSubproblem {
  CompositeProblem psi;  // psi.f is the perturbed smooth part g
  double L = 0.0;        // M_rho
  double mu = 0.0;       // eps_k / (4 D^2)
};

/// g = Psi_lambda + (eps_k / 8D^2) ||. - x_k||^2 with L = M_rho and
/// mu = eps_k / (4D^2); h is unchanged.
AlSubproblem build_al_subproblem(const IalmState& state, const IalmConfig& config,
                                 const ConstrainedProblem& problem);

/// Numeric check of the dual lower-oracle inequality (verify mode): the
/// Lagrangian error L(x_{k+1}, lambda_{k+1}) - d(lambda_{k+1}) against
/// eps0 alpha^k + (sigma / 2 rho) ||lambda_{k+1} - lambda_k||^2, with the
/// dual value estimated by an auxiliary high-accuracy solve.
struct DualGapCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double d_hat = 0.0;
  double estimate_tol = 0.0;
  bool holds = false;
};

struct IalmStepResult {
  KktCertificate cert;
  bool terminated = false;
  bool inner_budget_hit = false;
  int inner_iters = 0;
  double grad_map_norm = 0.0;  // exit ||G|| of the unperturbed mapping
  Vector x_tilde;              // inner point the mapping was taken at
  double eta = 0.0;            // mapping stepsize 1/(2L+mu)
  std::optional<DualGapCheck> dual_check;
};

/// One outer iteration: sets eps_k, solves the perturbed subproblem until
/// ||G_{L_rho(., lambda_k)}(x_tilde)|| <= eps_k / (2D), applies the mapping
/// step and the multiplier update, and reports the certificate. Terminates
/// when ||G|| <= eps/2 and ||A x_{k+1} - b|| <= eps.
IalmStepResult ialm_step(IalmState& state, const IalmConfig& config,
                         const ConstrainedProblem& problem);

struct AlmOuterRow {
  int k;
  int inner_iters;
  long prox_count;
  long grad_count;
  double wall_time_s;
  double eps_k;
  double grad_map_norm;
  double v_norm;
  double feas;
  double dual_norm;
  double objective;  // phi(x_{k+1})
};

struct IalmResult {
  Vector x;
  Vector lambda;
  KktCertificate cert;
  bool converged = false;
  bool inner_budget_hit = false;
  IalmState state;
  std::vector<AlmOuterRow> trace;
  Vector x_tilde_final;
  Vector lambda_before_final;
  double eta_final = 0.0;
};

IalmResult run_ialm(const ConstrainedProblem& problem, const IalmConfig& config,
                    std::optional<Vector> x0 = std::nullopt);

/// Linearized proximal ALM baseline:
///   x_{k+1} = prox_{eta h}(x_k - eta (grad f(x_k) + A^T lambda_k + rho A^T (A x_k - b))),
///   lambda_{k+1} = lambda_k + rho (A x_{k+1} - b),
/// with eta <= 1/(L_f + rho ||A||^2).
struct LpalmState {
  Vector x;
  Vector lambda;
  int k = 0;
  long prox_count = 0;
  long grad_count = 0;
};

void lpalm_step(LpalmState& state, const ConstrainedProblem& problem, double rho,
                double eta);

/// Default penalty max{sqrt(L_f)/||A||, L_f/||A||^2}.
double lpalm_default_rho(const ConstrainedProblem& problem);

struct LpalmResult {
  Vector x;
  Vector lambda;
  KktCertificate cert;
  bool converged = false;
  LpalmState state;
  std::vector<AlmOuterRow> trace;
};

LpalmResult run_lpalm(const ConstrainedProblem& problem, double rho, double eps,
                      int max_iters, std::optional<Vector> x0 = std::nullopt,
                      int trace_stride = 16);

/// High-accuracy estimate of d(lambda) = min_x phi(x) + <lambda, Ax-b>
/// (optionally with a proximal center perturbation) via an inner accelerated
/// solve. Returns the best objective value found. Used by verify mode.
double estimate_dual_value(const ConstrainedProblem& problem, const Vector& lambda,
                           const Vector& start, int iters = 4000);

}  // namespace arco
