#include "arco/alm.hpp"

#include <chrono>
#include <cmath>

namespace arco {

IalmConfig IalmConfig::theorem_defaults(double eps) {
  IalmConfig c;
  c.eps = eps;
  c.eps0 = eps;
  c.sigma = 0.5;
  c.rho = 1.0 / eps;
  c.alpha = 0.5;
  return c;
}

IalmConfig IalmConfig::practical_defaults(double eps) {
  IalmConfig c;
  c.eps = eps;
  c.eps0 = 100.0;
  c.sigma = 0.5;
  c.rho = 1.0;
  c.alpha = 0.7;
  return c;
}

void IalmConfig::validate(double diameter) const {
  if (!(rho > 0.0) || !(eps > 0.0) || !(eps0 > 0.0))
    throw std::invalid_argument("IalmConfig: rho, eps, eps0 must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("IalmConfig: alpha must lie in (0,1)");
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("IalmConfig: sigma must lie in (0,1)");
  if (2.0 * sigma * rho * eps > diameter * (1.0 + 1e-12))
    throw std::invalid_argument("IalmConfig: requires 2 sigma rho eps <= D");
}

AlSubproblem build_al_subproblem(const IalmState& state, const IalmConfig& config,
                                 const ConstrainedProblem& problem) {
  const double D = problem.diameter();
  const double mu = state.eps_k / (4.0 * D * D);
  SmoothOracle psi_smooth = augmented_lagrangian_oracle(problem, state.lambda, config.rho);
  const double M_rho = psi_smooth.L();

  Vector center = state.x;
  auto eval = [base = std::move(psi_smooth), center, mu](const Vector& x) {
    Eval e = base(x);
    Vector d = x - center;
    e.value += 0.5 * mu * d.squaredNorm();
    e.grad += mu * d;
    return e;
  };
  SmoothOracle g(std::move(eval), M_rho + mu, mu);

  AlSubproblem sub{CompositeProblem(std::move(g), problem.base().h, problem.n()), M_rho,
                   mu};
  return sub;
}

double estimate_dual_value(const ConstrainedProblem& problem, const Vector& lambda,
                           const Vector& start, int iters) {
  // min_x f(x) + <lambda, Ax - b> + h(x): smooth part is L_f-smooth.
  auto A = problem.shared_A();
  Vector b = problem.b();
  SmoothOracle f = problem.base().f;
  auto eval = [A, b = std::move(b), f, lambda](const Vector& x) {
    Eval e = f(x);
    Vector r = (*A) * x - b;
    e.value += lambda.dot(r);
    e.grad += A->transpose() * lambda;
    return e;
  };
  SmoothOracle g(std::move(eval), problem.base().f.L(), problem.base().f.mu());
  CompositeProblem sub(std::move(g), problem.base().h, problem.n());
  AcgRun run = run_acg(sub, start, sub.f.L(), sub.f.mu(), MaxIters{iters});
  return run.state.psi_y;
}

IalmStepResult ialm_step(IalmState& state, const IalmConfig& config,
                         const ConstrainedProblem& problem) {
  const double D = problem.diameter();
  state.eps_k =
      (config.eps0 * std::pow(config.alpha, state.k) + config.sigma * config.rho * config.eps * config.eps) /
      2.0;

  AlSubproblem sub = build_al_subproblem(state, config, problem);
  const double eta = 1.0 / (2.0 * sub.L + sub.mu);
  const double threshold = state.eps_k / (2.0 * D);
  SmoothOracle psi_smooth = augmented_lagrangian_oracle(problem, state.lambda, config.rho);

  AcgState inner = acg_init(sub.psi, state.x, sub.L, sub.mu);
  IalmStepResult out;
  out.eta = eta;

  bool hit = false;
  Vector x_plus, G;
  while (inner.iter < config.inner_budget) {
    acg_step(sub.psi, inner);
    if (config.inner_check == InnerCheck::direct) {
      // grad Psi_lambda(x_tilde) from the perturbed gradient already in hand.
      Vector grad_psi = inner.grad_at_x_tilde - sub.mu * (inner.x_tilde - state.x);
      Vector cand = problem.base().h.prox(inner.x_tilde - eta * grad_psi, eta);
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
        GradientMapping gm = gradient_mapping(psi_smooth, problem.base().h,
                                              inner.x_tilde, eta);
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

  Vector lambda_prev = state.lambda;
  out.cert = kkt_certificate(problem, inner.x_tilde, lambda_prev, eta, config.rho,
                             psi_smooth);
  state.prox_count += 1;
  state.grad_count += 2;

  state.x = out.cert.x;
  state.lambda = out.cert.lambda;
  out.terminated = (out.grad_map_norm <= config.eps / 2.0 && out.cert.feas <= config.eps);

  if (config.verify_certificates && !out.terminated) {
    // Lower-oracle inequality for the dual step, with the dual value estimated
    // by an auxiliary solve; its accuracy enters the tolerance.
    DualGapCheck chk;
    chk.d_hat = estimate_dual_value(problem, state.lambda, state.x);
    double lagr = problem.lagrangian(state.x, state.lambda).value();
    chk.lhs = lagr - chk.d_hat;
    chk.rhs = config.eps0 * std::pow(config.alpha, state.k) +
              config.sigma / (2.0 * config.rho) * (state.lambda - lambda_prev).squaredNorm();
    chk.estimate_tol = 1e-6 * (1.0 + std::abs(chk.d_hat));
    chk.holds = chk.lhs <= chk.rhs + chk.estimate_tol;
    out.dual_check = chk;
  }

  ++state.k;
  return out;
}

IalmResult run_ialm(const ConstrainedProblem& problem, const IalmConfig& config,
                    std::optional<Vector> x0) {
  config.validate(problem.diameter());

  IalmState st;
  st.x = x0 ? std::move(*x0) : Vector(Vector::Zero(problem.n()));
  if (!problem.base().h.value(st.x))
    throw std::domain_error("run_ialm: start point outside dom h");
  st.lambda = Vector::Zero(problem.m());

  IalmResult res;
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  for (int k = 0; k < config.max_outer; ++k) {
    Vector lambda_before = st.lambda;
    IalmStepResult step = ialm_step(st, config, problem);
    if (step.inner_budget_hit) {
      res.inner_budget_hit = true;
      break;
    }
    auto phi = problem.base().objective(st.x);
    res.trace.push_back({st.k - 1, step.inner_iters, st.prox_count, st.grad_count,
                         elapsed(), st.eps_k, step.grad_map_norm, step.cert.v_norm,
                         step.cert.feas, st.lambda.norm(), phi ? *phi : std::nan("")});
    res.cert = step.cert;
    res.x_tilde_final = step.x_tilde;
    res.lambda_before_final = std::move(lambda_before);
    res.eta_final = step.eta;
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

double lpalm_default_rho(const ConstrainedProblem& problem) {
  double L_f = problem.base().f.L();
  double a = problem.op_norm_A();
  return std::max(std::sqrt(L_f) / a, L_f / (a * a));
}

void lpalm_step(LpalmState& state, const ConstrainedProblem& problem, double rho,
                double eta) {
  double M_rho = problem.base().f.L() + rho * problem.op_norm_A() * problem.op_norm_A();
  if (eta * M_rho > 1.0 + 1e-12)
    throw std::invalid_argument("lpalm_step: requires eta <= 1/(L_f + rho ||A||^2)");

  Eval fe = problem.base().f(state.x);
  ++state.grad_count;
  Vector r = problem.residual(state.x);
  Vector grad = fe.grad + problem.A().transpose() * (state.lambda + rho * r);
  state.x = problem.base().h.prox(state.x - eta * grad, eta);
  ++state.prox_count;
  state.lambda += rho * problem.residual(state.x);
  ++state.k;
}

LpalmResult run_lpalm(const ConstrainedProblem& problem, double rho, double eps,
                      int max_iters, std::optional<Vector> x0, int trace_stride) {
  LpalmResult res;
  LpalmState st;
  st.x = x0 ? std::move(*x0) : Vector(Vector::Zero(problem.n()));
  if (!problem.base().h.value(st.x))
    throw std::domain_error("run_lpalm: start point outside dom h");
  st.lambda = Vector::Zero(problem.m());

  double M_rho = problem.base().f.L() + rho * problem.op_norm_A() * problem.op_norm_A();
  double eta = 1.0 / M_rho;
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  for (int k = 0; k < max_iters; ++k) {
    Vector x_prev = st.x;
    Vector lambda_prev = st.lambda;
    lpalm_step(st, problem, rho, eta);

    // The update is exactly one prox-gradient step on Psi_{lambda_prev}, so
    // the certificate reuses x_prev as the mapping point.
    SmoothOracle psi_smooth = augmented_lagrangian_oracle(problem, lambda_prev, rho);
    KktCertificate cert = kkt_certificate(problem, x_prev, lambda_prev, eta, rho,
                                          psi_smooth);
    st.prox_count += 1;
    st.grad_count += 2;

    bool done = cert.satisfies(eps);
    if (done || k % trace_stride == 0 || k + 1 == max_iters) {
      auto phi = problem.base().objective(st.x);
      res.trace.push_back({k, 1, st.prox_count, st.grad_count, elapsed(), 0.0,
                           (x_prev - st.x).norm() / eta, cert.v_norm, cert.feas,
                           st.lambda.norm(), phi ? *phi : std::nan("")});
    }
    res.cert = cert;
    if (done) {
      res.converged = true;
      break;
    }
  }
  res.x = st.x;
  res.lambda = st.lambda;
  res.state = std::move(st);
  return res;
}

}  // namespace arco
