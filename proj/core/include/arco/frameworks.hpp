#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "arco/acg.hpp"
#include "arco/restarted_acg.hpp"

namespace arco {

using ValueHandle = std::function<std::optional<double>(const Vector&)>;

/// One iteration of the lower-oracle scheme: a surrogate Gamma_k that
/// minorizes Phi + ||. - x_k||^2/(2 lambda), the candidate y_{k+1}, the
/// auxiliary minimizer x_{k+1} of Gamma_k + ||. - x_k||^2/(2 A_k), and its
/// scaled displacement u_hat. A_k absent means the unregularized choice
/// (A_k = infinity), for which u_hat is zero and x_{k+1} minimizes Gamma_k.
struct LoraRecord {
  Vector x_k, y_next, x_next, u_hat;
  ValueHandle Gamma;  // (1/lambda)-strongly convex on dom Phi
  double lambda = 0.0;
  double sigma = 0.0;
  double delta = 0.0;
  std::optional<double> A_k;  // nullopt: unregularized
};

/// True iff
///   ||lambda u_hat||^2 + 2 lambda [Phi(y) + ||y - x_k||^2/(2 lambda) - Gamma(x_next)]
///     <= sigma ||y - x_k||^2 + 2 lambda delta   (up to `tol` relative slack).
bool lora_certificate(const LoraRecord& rec, const ValueHandle& Phi, double tol = 1e-10);

/// Accelerated analogue with prox center x_tilde, candidate y_tilde_next,
/// surrogate minimizer z_next, and error schedule delta_k = delta0 alpha^k.
struct FloraRecord {
  Vector x_tilde, y_tilde_next, z_next, u_hat, u;
  double b = 0.0, B = 0.0, tau = 0.0;  // scalars after the step
  double delta0 = 0.0, alpha = 0.0;
  double mu = 0.0, lambda = 0.0, sigma = 0.0;
  int k = 0;
  ValueHandle Gamma;
};

bool flora_certificate(const FloraRecord& rec, const ValueHandle& Phi,
                       double tol = 1e-10);

/// Proximal gradient method as a lower-oracle instance: runs
/// x_{k+1} = prox_{eta h}(x_k - eta grad f(x_k)) for `steps` iterations and
/// emits one record per step with Gamma_k = l_f(.; x_k) + h + ||.-x_k||^2/(2 eta),
/// lambda = eta, sigma = eta L_f, delta = 0, unregularized A, u_hat = 0.
/// Requires eta <= 1/L_f.
std::vector<LoraRecord> pgm_run_as_lora(const CompositeProblem& problem, const Vector& x0,
                                        double eta, int steps);

/// Builds the accelerated-framework record of one restarted outer step from
/// the stored inner summary (surrogate = aggregated lower model, delta = 0).
FloraRecord restart_step_as_flora(const RestartState& state, double lambda, double sigma,
                                  double mu_f);

struct MonitorRow {
  int k = 0;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct MonitorReport {
  std::vector<MonitorRow> distance;  // iterate-displacement bounds
  std::vector<MonitorRow> gap;       // objective-gap bounds
  bool all_pass = true;
};

/// Theorem monitors for a lower-oracle trace:
///   min_{1<=i<=k} ||y_i - x_{i-1}|| <= R0 / sqrt((1-sigma) k) + sqrt(2 lambda mean_delta_k / (1-sigma)),
///   min_{1<=i<=k} Phi(y_i) - Phi_*  <= R0^2 / (2 lambda k) + mean_delta_k.
MonitorReport lora_monitor(const std::vector<LoraRecord>& records, const ValueHandle& Phi,
                           double R0, double Phi_star, double slack = 1e-9);

/// Accelerated-framework monitors:
///   Phi(y_{k+1}) - Phi_* <= R0^2/(2 B_{k+1}) + delta0 C / B_{k+1},
///   ||y_tilde_{k+1} - x_tilde_k|| <= (sqrt(lambda) R0 + sqrt(2 lambda delta0 C)) / sqrt((1-sigma) B_{k+1}),
/// with C = sum B_{i+1} alpha^i summed to machine convergence.
MonitorReport flora_monitor(const std::vector<FloraRecord>& records,
                            const ValueHandle& Phi, double R0, double Phi_star,
                            double slack = 1e-9);

/// Error-decay recursion Delta_{-1} = 0, Delta_k = (B_k/B_{k+1}) Delta_{k-1} + delta_k
/// for delta_k = delta0 alpha^k over the given coefficient sequence
/// (B[i] = B_{i+1}). Equal to delta0 sum_i B_{i+1} alpha^i / B_{k+1}.
std::vector<double> flora_delta_recursion(double delta0, double alpha,
                                          const std::vector<double>& B);
std::vector<double> flora_delta_closed_form(double delta0, double alpha,
                                            const std::vector<double>& B);

}  // namespace arco
