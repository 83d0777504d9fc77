#pragma once

#include <optional>
#include <vector>

#include "arco/alm.hpp"

namespace arco {

struct FalmConfig {
  double rho = 1.0;
  double eps = 1e-3;
  double eps0 = 1.0;       // >= eps
  double sigma = 0.25;     // in (0,1), subject to 4 sigma rho eps <= 1
  double alpha = 0.85;     // in [0,1), < (1 + sqrt(gamma_d rho))^{-2}
  double gamma_p = 0.0;    // = eps / (2D)
  double gamma_d = 0.0;    // dual perturbation modulus
  double rhat = 1000.0;    // dual radius estimate
  Vector x0;               // primal start and perturbation center
  int max_outer = 1000;
  long inner_budget = 500000;
  InnerCheck inner_check = InnerCheck::direct;
  bool verify_certificates = false;

  /// rho = sqrt(m) L_f / ||A||^2 (or L_f/||A||^2 with theorem_rho), eps0 = 1/rho,
  /// sigma = 1/4, gamma_p = eps/(2D), gamma_d = sigma^{3/2} eps / (sqrt(3) rhat),
  /// alpha = min(alpha_user, 0.9 (1+sqrt(rho gamma_d))^{-2},
  ///             (15 D eps / (28 eps0))^{sqrt(rho eps / D)}, 0.99).
  static FalmConfig defaults(const ConstrainedProblem& problem, double eps,
                             double rhat = 1000.0, bool theorem_rho = false,
                             double alpha_user = 0.85);

  void validate(double diameter) const;
};

struct FalmState {
  Vector x;
  Vector lambda, nu, nu_tilde;
  OuterScalars scalars;  // lambda-role rho, mu-role gamma_d
  double eps_k = 0.0;
  int k = 0;
  long prox_count = 0;
  long grad_count = 0;
  long inner_iters = 0;
};

struct PerturbedSubproblem {
  CompositeProblem psi;  // psi.f = Psi^{gamma_p}_{nu_tilde} + (eps_k/8D^2)||. - x_k||^2
  double L = 0.0;        // M_rho
  double mu = 0.0;       // gamma_p + eps_k / (4D^2)
};

PerturbedSubproblem build_perturbed_subproblem(const FalmState& state,
                                               const FalmConfig& config,
                                               const ConstrainedProblem& problem);

struct FalmStepResult {
  KktCertificate cert;  // v corrected for the primal perturbation
  bool terminated = false;
  bool inner_budget_hit = false;
  int inner_iters = 0;
  double grad_map_norm = 0.0;
  double residual_identity_lhs = 0.0;  // rho ||A x_{k+1} - b||
  double residual_identity_rhs = 0.0;  // ||lambda_{k+1} - nu_tilde_k||
  Vector x_tilde;
  double eta = 0.0;
  std::optional<DualGapCheck> dual_check;
};

FalmStepResult falm_step(FalmState& state, const FalmConfig& config,
                         const ConstrainedProblem& problem);

struct FalmResult {
  Vector x;
  Vector lambda;
  KktCertificate cert;
  bool converged = false;
  bool inner_budget_hit = false;
  FalmState state;
  std::vector<AlmOuterRow> trace;
  std::vector<std::pair<double, double>> residual_identities;  // per-iteration lhs/rhs
};

FalmResult run_ifalm(const ConstrainedProblem& problem, const FalmConfig& config);

/// C = sum_{i>=0} B_{i+1} alpha^i for the outer coefficient sequence with
/// parameters (rho, gamma_d), summed until the relative increment drops
/// below 1e-14.
double falm_error_weight_sum(double rho, double gamma_d, double alpha);

/// Closed upper bound rho / (1 - beta)^4 with beta = sqrt(alpha)(1 + sqrt(rho gamma_d)).
double falm_error_weight_sum_bound(double rho, double gamma_d, double alpha);

/// Dual radius constant R = rhat (1 + sqrt(2 eps0 C)) (2/sqrt(1-sigma) + 1).
double falm_dual_radius(double rhat, double eps0, double C, double sigma);

/// d~(lambda) = min_x [phi(x) + (gamma_p/2)||x - x0||^2 + <lambda, Ax-b>]
///              - (gamma_d/2)||lambda||^2, estimated by an inner solve.
double estimate_perturbed_dual_value(const ConstrainedProblem& problem,
                                     const Vector& lambda, const Vector& x0,
                                     double gamma_p, double gamma_d, const Vector& start,
                                     int iters = 4000);

}  // namespace arco
