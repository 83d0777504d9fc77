#include "arco/scalars.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace arco {

void AcgScalars::advance() {
  a = (tau + std::sqrt(tau * tau + 8.0 * tau * A * L)) / (4.0 * L);
  A += a;
  tau += mu * a;
}

void OuterScalars::advance() {
  b = (tau * lambda + std::sqrt(tau * tau * lambda * lambda + 4.0 * tau * lambda * B)) / 2.0;
  B += b;
  tau += b * mu;
}

double acg_coefficient_lower_bound(int j, double L, double mu) {
  double poly = 0.25 * double(j + 1) * double(j + 1);
  double geo = std::pow(1.0 + 0.5 * std::sqrt(mu / (2.0 * L)), 2.0 * j);
  return std::max(poly, geo) / (2.0 * L);
}

double outer_coefficient_lower_bound(int k, double lambda, double mu) {
  double poly = 0.25 * double(k + 1) * double(k + 1);
  double geo = std::pow(1.0 + 0.5 * std::sqrt(lambda * mu), 2.0 * k);
  return lambda * std::max(poly, geo);
}

double restart_inner_iteration_bound(double lambda, double sigma, double L_f,
                                     double mu_f) {
  double s = lambda * (L_f - mu_f);
  double sqrt_branch = 2.0 * std::sqrt(10.0 * s / sigma);
  double log_branch =
      (0.25 + 0.5 * std::sqrt(2.0 * s / (1.0 + lambda * mu_f))) * std::log(10.0 * s / sigma);
  return 1.0 + std::ceil(std::min(sqrt_branch, log_branch));
}

double weighted_coefficient_sum(double lambda, double mu, double alpha) {
  if (alpha == 0.0) return lambda;  // single term B_1 = lambda
  OuterScalars sc(lambda, mu);
  double sum = 0.0;
  double w = 1.0;
  for (int i = 0; i < 1000000; ++i) {
    sc.advance();
    double term = sc.B * w;
    if (!std::isfinite(term)) break;
    sum += term;
    if (i > 0 && term <= 1e-14 * sum) break;
    w *= alpha;
  }
  return sum;
}

double weighted_coefficient_sum_bound(double lambda, double mu, double alpha) {
  double beta = std::sqrt(alpha) * (1.0 + std::sqrt(lambda * mu));
  if (beta >= 1.0) return std::numeric_limits<double>::infinity();
  return lambda / std::pow(1.0 - beta, 4.0);
}

}  // namespace arco
