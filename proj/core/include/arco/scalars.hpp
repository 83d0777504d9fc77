#pragma once

#include <stdexcept>

namespace arco {

/// Scalar sequence of the accelerated composite gradient iteration:
///   a_j = (tau_j + sqrt(tau_j^2 + 8 tau_j A_j L)) / (4L),
///   A_{j+1} = A_j + a_j,  tau_{j+1} = tau_j + mu a_j,
/// starting from A_0 = 0, tau_0 = 1. The sequence satisfies
/// 2 L a_j^2 = A_{j+1} tau_j and tau_j = 1 + mu A_j at every j.
struct AcgScalars {
  double a = 0.0;
  double A = 0.0;
  double tau = 1.0;
  double L = 0.0;
  double mu = 0.0;

  AcgScalars() = default;
  AcgScalars(double L_, double mu_) : L(L_), mu(mu_) {
    if (!(L > 0.0)) throw std::invalid_argument("AcgScalars: L must be positive");
    if (mu < 0.0) throw std::invalid_argument("AcgScalars: mu must be nonnegative");
  }

  /// One update; afterwards `a` holds a_j and (A, tau) hold the j+1 values.
  void advance();
};

/// Outer scalar sequence shared by the restarted and dual-accelerated loops:
///   b_k = (tau_k lambda + sqrt(tau_k^2 lambda^2 + 4 tau_k lambda B_k)) / 2,
///   B_{k+1} = B_k + b_k,  tau_{k+1} = tau_k + b_k mu,
/// from B_0 = 0, tau_0 = 1, with b_k^2 = lambda tau_k B_{k+1} and
/// tau_k = 1 + mu B_k.
struct OuterScalars {
  double b = 0.0;
  double B = 0.0;
  double tau = 1.0;
  double lambda = 0.0;
  double mu = 0.0;

  OuterScalars() = default;
  OuterScalars(double lambda_, double mu_) : lambda(lambda_), mu(mu_) {
    if (!(lambda > 0.0)) throw std::invalid_argument("OuterScalars: lambda must be positive");
    if (mu < 0.0) throw std::invalid_argument("OuterScalars: mu must be nonnegative");
  }

  void advance();
};

/// Lower bound on A_{j+1}: max{(j+1)^2/4, (1 + sqrt(mu/2L)/2)^{2j}} / (2L).
double acg_coefficient_lower_bound(int j, double L, double mu);

/// Lower bound on B_{k+1}: lambda * max{(k+1)^2/4, (1 + sqrt(lambda mu)/2)^{2k}}.
double outer_coefficient_lower_bound(int k, double lambda, double mu);

/// Iteration cap for one inner call of the restarted scheme,
///   1 + ceil(min{ 2 sqrt(10 lambda (L_f - mu_f) / sigma),
///                 (1/4 + sqrt(2 lambda (L_f - mu_f) / (1 + lambda mu_f)) / 2)
///                   * ln(10 lambda (L_f - mu_f) / sigma) }).
/// Valid for lambda >= 1/(L_f - mu_f).
double restart_inner_iteration_bound(double lambda, double sigma, double L_f, double mu_f);

/// Error-weight sum C = sum_{i>=0} B_{i+1} alpha^i over the outer coefficient
/// sequence, accumulated until the relative increment drops below 1e-14.
/// Finite whenever alpha (1 + sqrt(lambda mu))^2 < 1.
double weighted_coefficient_sum(double lambda, double mu, double alpha);

/// Closed bound lambda / (1 - beta)^4, beta = sqrt(alpha) (1 + sqrt(lambda mu)).
double weighted_coefficient_sum_bound(double lambda, double mu, double alpha);

}  // namespace arco
