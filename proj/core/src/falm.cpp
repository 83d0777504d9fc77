#include "arco/falm.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace arco {

FalmConfig FalmConfig::defaults(const ConstrainedProblem& problem, double eps,
                                double rhat, bool theorem_rho, double alpha_user) {
  FalmConfig c;
  const double L_f = problem.base().f.L();
  const double a2 = problem.op_norm_A() * problem.op_norm_A();
  const double D = problem.diameter();
  c.eps = eps;
  c.rho = theorem_rho ? L_f / a2 : std::sqrt(double(problem.m())) * L_f / a2;
  c.eps0 = 1.0 / c.rho;
  c.sigma = 0.25;
  c.gamma_p = eps / (2.0 * D);
  c.rhat = rhat;
  c.gamma_d = std::pow(c.sigma, 1.5) * eps / (std::sqrt(3.0) * rhat);
  double bound1 = 0.9 / std::pow(1.0 + std::sqrt(c.rho * c.gamma_d), 2.0);
  double bound2 =
      std::pow(15.0 * D * eps / (28.0 * c.eps0), std::sqrt(c.rho * eps / D));
  c.alpha = std::min({alpha_user, bound1, bound2, 0.99});
  c.x0 = Vector::Zero(problem.n());
  return c;
}

void FalmConfig::validate(double diameter) const {
  if (!(rho > 0.0) || !(eps > 0.0) || !(gamma_d > 0.0))
    throw std::invalid_argument("FalmConfig: rho, eps, gamma_d must be positive");
  if (eps0 < eps)
    throw std::invalid_argument("FalmConfig: requires eps0 >= eps");
  if (4.0 * sigma * rho * eps > 1.0 + 1e-12)
    throw std::invalid_argument("FalmConfig: requires 4 sigma rho eps <= 1");
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("FalmConfig: sigma must lie in (0,1)");
  if (!(alpha >= 0.0) || alpha * std::pow(1.0 + std::sqrt(gamma_d * rho), 2.0) >= 1.0)
    throw std::invalid_argument(
        "FalmConfig: requires 0 <= alpha < (1 + sqrt(gamma_d rho))^{-2}");
  double expected_gp = eps / (2.0 * diameter);
  if (std::abs(gamma_p - expected_gp) > 1e-12 * std::max(1.0, expected_gp))
    throw std::invalid_argument("FalmConfig: gamma_p must equal eps / (2D)");
}

PerturbedSubproblem build_perturbed_subproblem(const FalmState& state,
                                               const FalmConfig& config,
                                               const ConstrainedProblem& problem) {
  const double D = problem.diameter();
  const double mu_reg = state.eps_k / (4.0 * D * D);
  SmoothOracle al = augmented_lagrangian_oracle(problem, state.nu_tilde, config.rho);
  const double M_rho = al.L();

  Vector xk = state.x;
  Vector x0 = config.x0;
  const double gp = config.gamma_p;
  auto eval = [al = std::move(al), xk = std::move(xk), x0 = std::move(x0), gp,
               mu_reg](const Vector& x) {
    Eval e = al(x);
    Vector dp = x - x0;
    Vector dk = x - xk;
    e.value += 0.5 * gp * dp.squaredNorm() + 0.5 * mu_reg * dk.squaredNorm();
    e.grad += gp * dp + mu_reg * dk;
    return e;
  };
  const double mu = gp + mu_reg;
  SmoothOracle g(std::move(eval), M_rho + mu, mu);
  return PerturbedSubproblem{CompositeProblem(std::move(g), problem.base().h, problem.n()),
                             M_rho, mu};
}

double estimate_perturbed_dual_value(const ConstrainedProblem& problem,
                                     const Vector& lambda, const Vector& x0,
                                     double gamma_p, double gamma_d, const Vector& start,
                                     int iters) {
  auto A = problem.shared_A();
  Vector b = problem.b();
  SmoothOracle f = problem.base().f;
  auto eval = [A, b = std::move(b), f, lambda, x0, gamma_p](const Vector& x) {
    Eval e = f(x);
    Vector r = (*A) * x - b;
    Vector dp = x - x0;
    e.value += lambda.dot(r) + 0.5 * gamma_p * dp.squaredNorm();
    e.grad += A->transpose() * lambda + gamma_p * dp;
    return e;
  };
  SmoothOracle g(std::move(eval), problem.base().f.L() + gamma_p,
                 problem.base().f.mu() + gamma_p);
  CompositeProblem sub(std::move(g), problem.base().h, problem.n());
  AcgRun run = run_acg(sub, start, problem.base().f.L(), gamma_p, MaxIters{iters});
  return run.state.psi_y - 0.5 * gamma_d * lambda.squaredNorm();
}

FalmStepResult falm_step(FalmState& state, const FalmConfig& config,
                         const ConstrainedProblem& problem) {
  const double D = problem.diameter();
  state.eps_k = (7.0 * config.eps0 * std::pow(config.alpha, state.k) +
                 config.sigma * config.rho * config.eps * config.eps) /
                8.0;

  const double B_prev = state.scalars.B;
  const double tau_prev = state.scalars.tau;
  state.scalars.advance();
  const double b_k = state.scalars.b;
  const double B_next = state.scalars.B;
  const double tau_next = state.scalars.tau;
  state.nu_tilde = (B_prev * state.lambda + b_k * state.nu) / B_next;

  PerturbedSubproblem sub = build_perturbed_subproblem(state, config, problem);
  const double eta = 1.0 / (2.0 * sub.L + sub.mu);
  const double threshold = state.eps_k / (2.0 * D);

  // Smooth part of the perturbed augmented Lagrangian at nu_tilde; the dual
  // perturbation term is constant in x and does not enter the mapping.
  Vector x0 = config.x0;
  const double gp = config.gamma_p;
  SmoothOracle al = augmented_lagrangian_oracle(problem, state.nu_tilde, config.rho);
  auto pert_eval = [al, x0, gp](const Vector& x) {
    Eval e = al(x);
    Vector dp = x - x0;
    e.value += 0.5 * gp * dp.squaredNorm();
    e.grad += gp * dp;
    return e;
  };
  SmoothOracle pert_smooth(pert_eval, sub.L + gp, gp);

  const double mu_reg = state.eps_k / (4.0 * D * D);
  AcgState inner = acg_init(sub.psi, state.x, sub.L, sub.mu);
  FalmStepResult out;
  out.eta = eta;

  bool hit = false;
  Vector x_plus, G;
  while (inner.iter < config.inner_budget) {
    acg_step(sub.psi, inner);
    if (config.inner_check == InnerCheck::direct) {
      Vector grad_pert = inner.grad_at_x_tilde - mu_reg * (inner.x_tilde - state.x);
      Vector cand = problem.base().h.prox(inner.x_tilde - eta * grad_pert, eta);
      ++inner.prox_count;
      Vector Gc = (inner.x_tilde - cand) / eta;
      if (Gc.norm() <= threshold) {
        hit = true;
        x_plus = std::move(cand);
        G = std::move(Gc);
        break;
      }
    } else {
      if (inner.grad_map_norm <= state.eps_k / (4.0 * D)) {
        GradientMapping gm =
            gradient_mapping(pert_smooth, problem.base().h, inner.x_tilde, eta);
        ++inner.prox_count;
        ++inner.grad_count;
        hit = true;
        x_plus = std::move(gm.x_plus);
        G = std::move(gm.G);
        break;
      }
    }
  }

  state.prox_count += inner.prox_count;
  state.grad_count += inner.grad_count;
  state.inner_iters += inner.iter;
  out.inner_iters = inner.iter;

  if (!hit) {
    out.inner_budget_hit = true;
    return out;
  }

  out.x_tilde = inner.x_tilde;
  out.grad_map_norm = G.norm();

  KktCertificate cert = kkt_certificate(problem, inner.x_tilde, state.nu_tilde, eta,
                                        config.rho, pert_smooth);
  state.prox_count += 1;
  state.grad_count += 2;

  // cert.v is a subgradient of the perturbed Lagrangian; subtracting the
  // perturbation gradient gives one for the original problem.
  cert.v -= gp * (cert.x - config.x0);
  cert.v_norm = cert.v.norm();

  Vector lambda_next = cert.lambda;  // nu_tilde + rho (A x_plus - b)
  out.residual_identity_lhs = config.rho * cert.feas;
  out.residual_identity_rhs = (lambda_next - state.nu_tilde).norm();

  out.terminated =
      (out.grad_map_norm <= config.eps / 4.0 && cert.feas <= config.eps);

  state.x = cert.x;
  Vector nu_tilde_k = state.nu_tilde;
  state.lambda = lambda_next;
  out.cert = std::move(cert);

  if (!out.terminated) {
    Vector lambda_hat = state.lambda / (1.0 + config.gamma_d * config.rho);
    Vector u = (nu_tilde_k - lambda_hat) / config.rho;
    state.nu = (tau_prev * state.nu + b_k * config.gamma_d * lambda_hat - b_k * u) /
               tau_next;

    if (config.verify_certificates) {
      DualGapCheck chk;
      chk.d_hat = estimate_perturbed_dual_value(problem, state.lambda, config.x0,
                                                config.gamma_p, config.gamma_d, state.x);
      auto phi = problem.base().objective(state.x);
      double lagr_pert = *phi + 0.5 * gp * (state.x - config.x0).squaredNorm() +
                         state.lambda.dot(problem.residual(state.x)) -
                         0.5 * config.gamma_d * state.lambda.squaredNorm();
      double gd = config.gamma_d;
      chk.lhs = lagr_pert - chk.d_hat +
                gd * gd * config.rho * state.lambda.squaredNorm() /
                    (2.0 * (1.0 + gd * config.rho));
      chk.rhs = config.sigma / (2.0 * config.rho) *
                    (state.lambda - nu_tilde_k).squaredNorm() +
                config.eps0 * std::pow(config.alpha, state.k);
      chk.estimate_tol = 1e-6 * (1.0 + std::abs(chk.d_hat));
      chk.holds = chk.lhs <= chk.rhs + chk.estimate_tol;
      out.dual_check = chk;
    }
  }

  ++state.k;
  return out;
}

FalmResult run_ifalm(const ConstrainedProblem& problem, const FalmConfig& config) {
  config.validate(problem.diameter());

  FalmState st;
  st.x = config.x0.size() ? config.x0 : Vector(Vector::Zero(problem.n()));
  if (st.x.size() != problem.n())
    throw std::invalid_argument("run_ifalm: x0 dimension mismatch");
  if (!problem.base().h.value(st.x))
    throw std::domain_error("run_ifalm: start point outside dom h");
  st.lambda = Vector::Zero(problem.m());
  st.nu = Vector::Zero(problem.m());
  st.nu_tilde = Vector::Zero(problem.m());
  st.scalars = OuterScalars(config.rho, config.gamma_d);

  FalmResult res;
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  for (int k = 0; k < config.max_outer; ++k) {
    FalmStepResult step = falm_step(st, config, problem);
    if (step.inner_budget_hit) {
      res.inner_budget_hit = true;
      break;
    }
    auto phi = problem.base().objective(st.x);
    res.trace.push_back({st.k - 1, step.inner_iters, st.prox_count, st.grad_count,
                         elapsed(), st.eps_k, step.grad_map_norm, step.cert.v_norm,
                         step.cert.feas, st.lambda.norm(), phi ? *phi : std::nan("")});
    res.residual_identities.emplace_back(step.residual_identity_lhs,
                                         step.residual_identity_rhs);
    res.cert = step.cert;
    if (step.terminated) {
      res.converged = true;
      break;
    }
  }
  res.x = st.x;
  res.lambda = st.lambda;
  res.state = std::move(st);
  return res;
}

double falm_error_weight_sum(double rho, double gamma_d, double alpha) {
  return weighted_coefficient_sum(rho, gamma_d, alpha);
}

double falm_error_weight_sum_bound(double rho, double gamma_d, double alpha) {
  return weighted_coefficient_sum_bound(rho, gamma_d, alpha);
}

double falm_dual_radius(double rhat, double eps0, double C, double sigma) {
  return rhat * (1.0 + std::sqrt(2.0 * eps0 * C)) * (2.0 / std::sqrt(1.0 - sigma) + 1.0);
}

}  // namespace arco
