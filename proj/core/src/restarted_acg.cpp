#include "arco/restarted_acg.hpp"

#include <chrono>
#include <cmath>

namespace arco {

RestartState racg_init(const CompositeProblem& phi, const Vector& w0, double lambda,
                       double mu_f) {
  if (w0.size() != phi.n) throw std::invalid_argument("racg_init: w0 dimension mismatch");
  auto h0 = phi.h.value(w0);
  if (!h0) throw std::domain_error("racg_init: w0 lies outside dom h");

  RestartState st;
  st.w = w0;
  st.v = w0;
  st.scalars = OuterScalars(lambda, mu_f);
  st.phi_w = phi.f(w0).value + *h0;
  st.grad_count = 1;
  return st;
}

namespace {

CompositeProblem proximal_subproblem(const CompositeProblem& phi, const Vector& center,
                                     double lambda) {
  SmoothOracle f = phi.f;
  auto eval = [f, center, lambda](const Vector& x) {
    Eval e = f(x);
    Vector d = x - center;
    e.value += d.squaredNorm() / (2.0 * lambda);
    e.grad += d / lambda;
    return e;
  };
  SmoothOracle g(std::move(eval), phi.f.L() + 1.0 / lambda, phi.f.mu() + 1.0 / lambda);
  return CompositeProblem(std::move(g), phi.h, phi.n);
}

}  // namespace

bool racg_outer_step(RestartState& st, const CompositeProblem& phi, double L_f,
                     double mu_f, double lambda, double sigma, int inner_budget) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("racg_outer_step: sigma must lie in (0,1)");

  const double B_prev = st.scalars.B;
  const double tau_prev = st.scalars.tau;
  st.scalars.advance();
  const double b = st.scalars.b;
  const double B_next = st.scalars.B;
  const double tau_next = st.scalars.tau;

  Vector v_tilde = (B_prev * st.w + b * st.v) / B_next;

  CompositeProblem sub = proximal_subproblem(phi, v_tilde, lambda);
  AcgRun inner = run_acg(sub, v_tilde, L_f - mu_f, mu_f + 1.0 / lambda,
                         RestartCond{lambda, sigma, inner_budget});
  st.prox_count += inner.state.prox_count;
  st.grad_count += inner.state.grad_count;

  const AcgState& in = inner.state;
  double phi_y = in.psi_y - (in.y - v_tilde).squaredNorm() / (2.0 * lambda);

  st.inner.v_tilde = v_tilde;
  st.inner.y = in.y;
  st.inner.x = in.x;
  st.inner.s = in.s;
  st.inner.A = in.scalars.A;
  st.inner.model = in.model;
  st.inner.psi_y = in.psi_y;
  st.inner.phi_y = phi_y;
  st.inner.iters = in.iter;

  if (phi_y <= st.phi_w) {
    st.w = in.y;
    st.phi_w = phi_y;
  }
  st.v = (tau_prev * st.v + b * mu_f * in.x - b * ((in.scalars.A + lambda) / lambda) * in.s) /
         tau_next;
  ++st.outer_iter;
  return !inner.budget_exhausted;
}

RacgResult run_restarted_acg(const CompositeProblem& phi, const Vector& w0, double L_f,
                             double mu_f, double lambda, double sigma, double eps,
                             int max_outer, int inner_budget,
                             std::optional<double> phi_ref) {
  if (mu_f == 0.0) {
    if (lambda * L_f < 1.0 - 1e-6)
      throw std::invalid_argument("run_restarted_acg: requires lambda >= 1/L_f");
  } else {
    if (lambda * mu_f > 1.0 + 1e-6)
      throw std::invalid_argument("run_restarted_acg: requires lambda <= 1/mu_f");
    if (lambda * (L_f - 2.0 * mu_f) < 1.0 - 1e-6)
      throw std::invalid_argument(
          "run_restarted_acg: requires lambda >= 1/(L_f - 2 mu_f)");
  }

  RacgResult res;
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  res.state = racg_init(phi, w0, lambda, mu_f);
  res.trace.push_back({0, 0, res.state.prox_count, res.state.grad_count, elapsed(),
                       res.state.phi_w});

  auto gap_reached = [&]() {
    return phi_ref && res.state.phi_w - *phi_ref <= eps;
  };
  if (gap_reached()) {
    res.reached_gap = true;
    res.prox_at_gap = res.state.prox_count;
    return res;
  }

  for (int k = 0; k < max_outer; ++k) {
    bool ok = racg_outer_step(res.state, phi, L_f, mu_f, lambda, sigma, inner_budget);
    res.trace.push_back({res.state.outer_iter, res.state.inner.iters,
                         res.state.prox_count, res.state.grad_count, elapsed(),
                         res.state.phi_w});
    if (!ok) {
      res.budget_exhausted = true;
      return res;
    }
    if (gap_reached()) {
      res.reached_gap = true;
      res.prox_at_gap = res.state.prox_count;
      return res;
    }
  }
  if (phi_ref) res.budget_exhausted = true;  // gap mode ran out of outer steps
  return res;
}

HeuristicRunResult heuristic_acg_run(const CompositeProblem& phi, const Vector& x0,
                                     double L_f, HeuristicRestart mode, double eps,
                                     std::optional<double> phi_ref, long max_prox,
                                     int k_min) {
  HeuristicRunResult res;
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  AcgState st = acg_init(phi, x0, L_f, 0.0);
  long total_prox = 0, total_grad = 0;
  int steps_since_restart = 0;
  double dist_prev = -1.0;  // ||y_k - y_{k-1}||; negative = no history yet

  auto emit = [&](int inner_iters) {
    res.trace.push_back({res.restarts, inner_iters, total_prox, total_grad, elapsed(),
                         st.psi_y});
  };

  while (total_prox < max_prox) {
    Vector y_old = st.y;
    long prox_before = st.prox_count, grad_before = st.grad_count;
    acg_step(phi, st);
    total_prox += st.prox_count - prox_before;
    total_grad += st.grad_count - grad_before;
    ++steps_since_restart;

    if (phi_ref && st.psi_y - *phi_ref <= eps) {
      res.reached_gap = true;
      res.prox_at_gap = total_prox;
      break;
    }

    bool do_restart = false;
    if (mode == HeuristicRestart::gradient) {
      double angle = (st.x_tilde - st.y).dot(st.y - y_old);
      do_restart = angle > 0.0;
    } else if (mode == HeuristicRestart::speed) {
      double dist_cur = (st.y - y_old).norm();
      if (dist_prev >= 0.0 && dist_cur < dist_prev && steps_since_restart >= k_min)
        do_restart = true;
      dist_prev = dist_cur;
    }

    if (do_restart) {
      double psi_y = st.psi_y;
      Vector y = st.y;
      st = acg_init(phi, y, L_f, 0.0);
      st.psi_y = psi_y;  // value already known; initializer defers it otherwise
      ++res.restarts;
      steps_since_restart = 0;
      dist_prev = -1.0;
      emit(0);
    }
  }

  res.y = st.y;
  res.phi_y = st.psi_y;
  res.prox_count = total_prox;
  res.grad_count = total_grad;
  emit(steps_since_restart);
  return res;
}

}  // namespace arco
