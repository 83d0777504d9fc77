#include "arco/frameworks.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace arco {

namespace {

double require(const std::optional<double>& v, const char* what) {
  if (!v) throw std::domain_error(std::string("frameworks: infinite value of ") + what);
  return *v;
}

}  // namespace

bool lora_certificate(const LoraRecord& rec, const ValueHandle& Phi, double tol) {
  Vector d = rec.y_next - rec.x_k;
  double phi_y = require(Phi(rec.y_next), "Phi(y_{k+1})");
  double gamma_x = require(rec.Gamma(rec.x_next), "Gamma_k(x_{k+1})");
  double lhs = rec.lambda * rec.lambda * rec.u_hat.squaredNorm() +
               2.0 * rec.lambda *
                   (phi_y + d.squaredNorm() / (2.0 * rec.lambda) - gamma_x);
  double rhs = rec.sigma * d.squaredNorm() + 2.0 * rec.lambda * rec.delta;
  return lhs <= rhs + tol * (1.0 + std::abs(lhs) + std::abs(rhs));
}

bool flora_certificate(const FloraRecord& rec, const ValueHandle& Phi, double tol) {
  Vector d = rec.y_tilde_next - rec.x_tilde;
  double phi_y = require(Phi(rec.y_tilde_next), "Phi(y~_{k+1})");
  double gamma_z = require(rec.Gamma(rec.z_next), "Gamma_k(z_{k+1})");
  double delta_k = rec.delta0 * std::pow(rec.alpha, rec.k);
  double lhs = rec.lambda * rec.lambda * rec.u_hat.squaredNorm() +
               2.0 * rec.lambda *
                   (phi_y + d.squaredNorm() / (2.0 * rec.lambda) - gamma_z);
  double rhs = rec.sigma * d.squaredNorm() + 2.0 * rec.lambda * delta_k;
  return lhs <= rhs + tol * (1.0 + std::abs(lhs) + std::abs(rhs));
}

std::vector<LoraRecord> pgm_run_as_lora(const CompositeProblem& problem, const Vector& x0,
                                        double eta, int steps) {
  if (eta * problem.f.L() > 1.0 + 1e-12)
    throw std::invalid_argument("pgm_run_as_lora: requires eta <= 1/L_f");
  if (!problem.h.value(x0))
    throw std::domain_error("pgm_run_as_lora: x0 outside dom h");

  std::vector<LoraRecord> records;
  records.reserve(steps);
  Vector x = x0;
  for (int k = 0; k < steps; ++k) {
    Eval e = problem.f(x);
    Vector x_next = problem.h.prox(x - eta * e.grad, eta);

    LoraRecord rec;
    rec.x_k = x;
    rec.y_next = x_next;
    rec.x_next = x_next;
    rec.u_hat = Vector::Zero(problem.n);
    rec.lambda = eta;
    rec.sigma = eta * problem.f.L();
    rec.delta = 0.0;
    rec.A_k = std::nullopt;
    ProxOracle h = problem.h;
    Vector xc = x;
    double fx = e.value;
    Vector gx = e.grad;
    rec.Gamma = [h, xc, fx, gx, eta](const Vector& u) -> std::optional<double> {
      auto hv = h.value(u);
      if (!hv) return std::nullopt;
      Vector d = u - xc;
      return fx + gx.dot(d) + *hv + d.squaredNorm() / (2.0 * eta);
    };
    records.push_back(std::move(rec));
    x = std::move(x_next);
  }
  return records;
}

FloraRecord restart_step_as_flora(const RestartState& state, double lambda, double sigma,
                                  double mu_f) {
  const InnerSummary& in = state.inner;
  FloraRecord rec;
  rec.x_tilde = in.v_tilde;
  rec.y_tilde_next = in.y;
  rec.z_next = in.x;
  rec.u_hat = in.s;
  rec.u = ((in.A + lambda) / lambda) * in.s;
  rec.b = state.scalars.b;
  rec.B = state.scalars.B;
  rec.tau = state.scalars.tau;
  rec.delta0 = 0.0;
  rec.alpha = 0.0;
  rec.mu = mu_f;
  rec.lambda = lambda;
  rec.sigma = sigma;
  rec.k = state.outer_iter - 1;
  QuadraticLowerModel model = in.model;
  rec.Gamma = [model](const Vector& u) -> std::optional<double> {
    return model.value(u);
  };
  return rec;
}

MonitorReport lora_monitor(const std::vector<LoraRecord>& records, const ValueHandle& Phi,
                           double R0, double Phi_star, double slack) {
  MonitorReport rep;
  double min_dist = std::numeric_limits<double>::infinity();
  double min_gap = std::numeric_limits<double>::infinity();
  double delta_sum = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const LoraRecord& rec = records[i];
    int k = static_cast<int>(i) + 1;
    double sigma = rec.sigma;
    double lambda = rec.lambda;
    delta_sum += rec.delta;
    double mean_delta = delta_sum / k;

    min_dist = std::min(min_dist, (rec.y_next - rec.x_k).norm());
    // the displacement bound needs sigma < 1; it is vacuous at sigma = 1
    double dist_bound =
        sigma < 1.0 ? R0 / std::sqrt((1.0 - sigma) * k) +
                          std::sqrt(2.0 * lambda * mean_delta / (1.0 - sigma))
                    : std::numeric_limits<double>::infinity();
    bool dist_ok = min_dist <= dist_bound + slack;
    rep.distance.push_back({k, min_dist, dist_bound, dist_ok});

    min_gap = std::min(min_gap, require(Phi(rec.y_next), "Phi(y_i)") - Phi_star);
    double gap_bound = R0 * R0 / (2.0 * lambda * k) + mean_delta;
    bool gap_ok = min_gap <= gap_bound + slack;
    rep.gap.push_back({k, min_gap, gap_bound, gap_ok});

    rep.all_pass = rep.all_pass && dist_ok && gap_ok;
  }
  return rep;
}

MonitorReport flora_monitor(const std::vector<FloraRecord>& records,
                            const ValueHandle& Phi, double R0, double Phi_star,
                            double slack) {
  MonitorReport rep;
  if (records.empty()) return rep;
  const FloraRecord& first = records.front();
  double C = weighted_coefficient_sum(first.lambda, first.mu, first.alpha);

  for (std::size_t i = 0; i < records.size(); ++i) {
    const FloraRecord& rec = records[i];
    int k = rec.k;

    double gap = require(Phi(rec.y_tilde_next), "Phi(y~_{k+1})") - Phi_star;
    double gap_bound = (0.5 * R0 * R0 + rec.delta0 * C) / rec.B;
    bool gap_ok = gap <= gap_bound + slack;
    rep.gap.push_back({k, gap, gap_bound, gap_ok});

    double dist = (rec.y_tilde_next - rec.x_tilde).norm();
    double dist_bound = (std::sqrt(rec.lambda) * R0 +
                         std::sqrt(2.0 * rec.lambda * rec.delta0 * C)) /
                        std::sqrt((1.0 - rec.sigma) * rec.B);
    bool dist_ok = dist <= dist_bound + slack;
    rep.distance.push_back({k, dist, dist_bound, dist_ok});

    rep.all_pass = rep.all_pass && gap_ok && dist_ok;
  }
  return rep;
}

std::vector<double> flora_delta_recursion(double delta0, double alpha,
                                          const std::vector<double>& B) {
  std::vector<double> out(B.size());
  double prev = 0.0;
  for (std::size_t k = 0; k < B.size(); ++k) {
    double B_k = k == 0 ? 0.0 : B[k - 1];
    double delta_k = delta0 * std::pow(alpha, static_cast<double>(k));
    out[k] = (B_k / B[k]) * prev + delta_k;
    prev = out[k];
  }
  return out;
}

std::vector<double> flora_delta_closed_form(double delta0, double alpha,
                                            const std::vector<double>& B) {
  std::vector<double> out(B.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < B.size(); ++k) {
    acc += B[k] * std::pow(alpha, static_cast<double>(k));
    out[k] = delta0 * acc / B[k];
  }
  return out;
}

}  // namespace arco
