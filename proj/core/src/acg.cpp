#include "arco/acg.hpp"

#include <cmath>
#include <limits>

namespace arco {

AcgState acg_init(const CompositeProblem& psi, const Vector& x0, double L, double mu) {
  if (!(L > 0.0)) throw std::invalid_argument("acg_init: L must be positive");
  if (mu < 0.0) throw std::invalid_argument("acg_init: mu must be nonnegative");
  if (mu > L) throw std::invalid_argument("acg_init: requires mu <= L");
  if (x0.size() != psi.n) throw std::invalid_argument("acg_init: x0 dimension mismatch");
  if (!psi.h.value(x0))
    throw std::domain_error("acg_init: x0 lies outside dom h");

  AcgState st;
  st.x0 = x0;
  st.x = x0;
  st.y = x0;
  st.y_tilde = x0;
  st.x_tilde = x0;
  st.scalars = AcgScalars(L, mu);
  st.model.linear = Vector::Zero(psi.n);
  st.model.curvature = mu;
  st.s = Vector::Zero(psi.n);
  st.u = Vector::Zero(psi.n);
  st.psi_y = std::numeric_limits<double>::quiet_NaN();  // filled on the first step
  st.grad_map_norm = std::numeric_limits<double>::quiet_NaN();
  return st;
}

void acg_step(const CompositeProblem& psi, AcgState& st) {
  const double L = st.scalars.L;
  const double mu = st.scalars.mu;
  const double A_prev = st.scalars.A;

  st.scalars.advance();
  const double a = st.scalars.a;
  const double A_next = st.scalars.A;

  // Momentum point; equals x0 on the first step since A_0 = 0.
  Vector x_tilde = (A_prev * st.y + a * st.x) / A_next;

  Eval gx = psi.f(x_tilde);
  ++st.grad_count;

  const double step = 1.0 / (2.0 * L + mu);
  Vector y_tilde = psi.h.prox(x_tilde - step * gx.grad, step);
  ++st.prox_count;

  auto h_val = psi.h.value(y_tilde);
  if (!h_val) throw std::domain_error("acg_step: prox output outside dom h");

  Eval gy = psi.f(y_tilde);
  ++st.grad_count;
  const double psi_cand = gy.value + *h_val;
  if (std::isnan(psi_cand))
    throw std::domain_error("acg_step: objective evaluated to NaN");

  if (st.iter == 0) {
    // psi(y_0) from the same oracle call: x_tilde == x0 == y_0 here.
    auto h0 = psi.h.value(st.y);
    st.psi_y = gx.value + *h0;
  }

  // Auxiliary point, using the pre-update y_j.
  Vector x_next =
      ((2.0 * L + mu) * a * y_tilde - (2.0 * A_prev * a * L / A_next) * st.y) /
      (A_next * mu + 1.0);

  // Monotone choice; ties go to the fresh candidate.
  if (psi_cand <= st.psi_y) {
    st.y = y_tilde;
    st.psi_y = psi_cand;
  }

  // Lower-model aggregation. The affine part of theta_{j+1} is assembled from
  // quantities already computed: Gamma_j(y_tilde) via g(x_tilde), its
  // gradient, and h(y_tilde).
  Vector diff = y_tilde - x_tilde;
  double gamma_at_cand =
      gx.value + gx.grad.dot(diff) + *h_val + 0.5 * (2.0 * L + mu) * diff.squaredNorm();
  double theta_scalar = gamma_at_cand - L * diff.squaredNorm();
  Vector u_next = 2.0 * L * (x_tilde - y_tilde);
  double theta_const =
      theta_scalar - u_next.dot(y_tilde) + 0.5 * mu * y_tilde.squaredNorm();
  Vector theta_lin = u_next - mu * y_tilde;

  st.model.constant = (A_prev * st.model.constant + a * theta_const) / A_next;
  st.model.linear = (A_prev * st.model.linear + a * theta_lin) / A_next;

  st.x = std::move(x_next);
  st.s = (st.x0 - st.x) / A_next;
  st.u = std::move(u_next);
  st.grad_at_x_tilde = std::move(gx.grad);
  st.grad_map_norm = (2.0 * L + mu) * diff.norm();
  st.x_tilde = std::move(x_tilde);
  st.y_tilde = std::move(y_tilde);
  ++st.iter;
}

bool restart_certificate(const AcgState& st, double lambda, double sigma) {
  if (st.iter < 1)
    throw std::logic_error("restart_certificate: undefined before the first step");
  double lhs = lambda * lambda * st.s.squaredNorm() +
               2.0 * lambda * (st.psi_y - st.model.value(st.x));
  double rhs = sigma * (st.y - st.x0).squaredNorm();
  return lhs <= rhs;
}

AcgRun run_acg(const CompositeProblem& psi, const Vector& x0, double L, double mu,
               const AcgTermination& termination,
               const std::function<void(const AcgState&)>& on_step) {
  AcgRun run;
  run.state = acg_init(psi, x0, L, mu);

  auto record = [&run]() {
    run.trace.push_back({run.state.iter, run.state.psi_y, run.state.grad_map_norm,
                         run.state.prox_count});
  };

  if (const auto* m = std::get_if<MaxIters>(&termination)) {
    for (int j = 0; j < m->iters; ++j) {
      acg_step(psi, run.state);
      record();
      if (on_step) on_step(run.state);
    }
    run.reason = AcgStop::max_iters;
    return run;
  }

  if (const auto* g = std::get_if<GradMapTol>(&termination)) {
    for (int j = 0; j < g->max_iters; ++j) {
      acg_step(psi, run.state);
      record();
      if (on_step) on_step(run.state);
      if (run.state.grad_map_norm <= g->eps) {
        run.reason = AcgStop::grad_map_tol;
        return run;
      }
    }
    run.reason = AcgStop::budget_exhausted;
    run.budget_exhausted = true;
    return run;
  }

  const auto& r = std::get<RestartCond>(termination);
  for (int j = 0; j < r.max_iters; ++j) {
    acg_step(psi, run.state);
    record();
    if (on_step) on_step(run.state);
    if (restart_certificate(run.state, r.lambda, r.sigma)) {
      run.reason = AcgStop::restart;
      return run;
    }
  }
  run.reason = AcgStop::budget_exhausted;
  run.budget_exhausted = true;
  return run;
}

}  // namespace arco
