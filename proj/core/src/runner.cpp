#include "arco/runner.hpp"

#include <chrono>
#include <cmath>

#include "arco/alm.hpp"
#include "arco/falm.hpp"
#include "arco/restarted_acg.hpp"

namespace arco {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

TraceRow composite_row(const RacgTraceRow& r, std::optional<double> phi_ref) {
  TraceRow row;
  row.outer_iter = r.outer_iter;
  row.inner_iters = r.inner_iters;
  row.prox_evals = r.prox_count;
  row.grad_evals = r.grad_count;
  row.wall_time_s = r.wall_time_s;
  row.objective = r.phi_w;
  row.gap_estimate = phi_ref ? r.phi_w - *phi_ref : kNaN;
  row.feasibility = kNaN;
  row.grad_map_norm = kNaN;
  row.dual_norm = kNaN;
  return row;
}

TraceRow alm_row(const AlmOuterRow& r, double diameter) {
  TraceRow row;
  row.outer_iter = r.k;
  row.inner_iters = r.inner_iters;
  row.prox_evals = r.prox_count;
  row.grad_evals = r.grad_count;
  row.wall_time_s = r.wall_time_s;
  row.objective = r.objective;
  double eps_live = std::max(r.v_norm, r.feas);
  row.gap_estimate = eps_live * (r.dual_norm + diameter);
  row.feasibility = r.feas;
  row.grad_map_norm = r.grad_map_norm;
  row.dual_norm = r.dual_norm;
  return row;
}

RunTrace run_pgm(const CompositeProblem& problem, const Vector& x0, double eps,
                 std::optional<double> phi_ref, long budget) {
  RunTrace trace;
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  const double eta = 1.0 / problem.f.L();
  Vector x = x0;
  long prox = 0, grad = 0;
  double phi = 0.0, gnorm = kNaN;
  bool reached = false;

  auto value_at = [&](const Vector& v) {
    auto hv = problem.h.value(v);
    return problem.f(v).value + *hv;
  };
  phi = value_at(x);
  ++grad;

  auto emit = [&](long k) {
    TraceRow row;
    row.outer_iter = k;
    row.inner_iters = 1;
    row.prox_evals = prox;
    row.grad_evals = grad;
    row.wall_time_s = elapsed();
    row.objective = phi;
    row.gap_estimate = phi_ref ? phi - *phi_ref : kNaN;
    row.feasibility = kNaN;
    row.grad_map_norm = gnorm;
    row.dual_norm = kNaN;
    trace.rows.push_back(row);
  };

  long k = 0;
  for (; k < budget; ++k) {
    Eval e = problem.f(x);
    ++grad;
    Vector x_next = problem.h.prox(x - eta * e.grad, eta);
    ++prox;
    gnorm = (x - x_next).norm() / eta;
    x = std::move(x_next);
    phi = value_at(x);
    ++grad;
    if (phi_ref && phi - *phi_ref <= eps) {
      reached = true;
      ++k;
      break;
    }
    if ((k + 1) % 512 == 0) emit(k + 1);
  }
  emit(k);
  trace.status = (phi_ref && !reached) ? RunStatus::budget_exhausted
                                       : RunStatus::terminated;
  return trace;
}

}  // namespace

Algo parse_algo(const std::string& name) {
  if (name == "acg") return Algo::acg;
  if (name == "racg") return Algo::racg;
  if (name == "grad_restart") return Algo::grad_restart;
  if (name == "speed_restart") return Algo::speed_restart;
  if (name == "pgm") return Algo::pgm;
  if (name == "ialm") return Algo::ialm;
  if (name == "ifalm") return Algo::ifalm;
  if (name == "lpalm") return Algo::lpalm;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string algo_name(Algo algo) {
  switch (algo) {
    case Algo::acg: return "acg";
    case Algo::racg: return "racg";
    case Algo::grad_restart: return "grad_restart";
    case Algo::speed_restart: return "speed_restart";
    case Algo::pgm: return "pgm";
    case Algo::ialm: return "ialm";
    case Algo::ifalm: return "ifalm";
    case Algo::lpalm: return "lpalm";
  }
  return "?";
}

bool algo_needs_constraints(Algo algo) {
  return algo == Algo::ialm || algo == Algo::ifalm || algo == Algo::lpalm;
}

RunTrace run_experiment(const ProblemInstance& instance, Algo algo,
                        const SolveParams& params) {
  const bool constrained = std::holds_alternative<LcqpInstance>(instance);
  if (algo_needs_constraints(algo) != constrained)
    throw std::invalid_argument("run_experiment: algorithm '" + algo_name(algo) +
                                "' is incompatible with this problem kind");

  if (!constrained) {
    const auto& inst = std::get<LassoInstance>(instance);
    CompositeProblem problem = inst.to_problem();
    const double L_f = problem.f.L();
    Vector x0 = inst.start();

    switch (algo) {
      case Algo::pgm:
        return run_pgm(problem, x0, params.eps, params.phi_ref, params.inner_budget);
      case Algo::acg:
      case Algo::grad_restart:
      case Algo::speed_restart: {
        HeuristicRestart mode = algo == Algo::acg ? HeuristicRestart::none
                                : algo == Algo::grad_restart ? HeuristicRestart::gradient
                                                             : HeuristicRestart::speed;
        HeuristicRunResult res = heuristic_acg_run(problem, x0, L_f, mode, params.eps,
                                                   params.phi_ref, params.inner_budget);
        RunTrace trace;
        for (const auto& r : res.trace) trace.rows.push_back(composite_row(r, params.phi_ref));
        trace.status = (params.phi_ref && !res.reached_gap) ? RunStatus::budget_exhausted
                                                            : RunStatus::terminated;
        return trace;
      }
      case Algo::racg: {
        double lambda = params.lambda.value_or(0.2);
        double sigma = params.sigma.value_or(0.5);
        RacgResult res = run_restarted_acg(problem, x0, L_f, 0.0, lambda, sigma,
                                           params.eps, params.max_outer,
                                           static_cast<int>(params.inner_budget),
                                           params.phi_ref);
        RunTrace trace;
        for (const auto& r : res.trace) trace.rows.push_back(composite_row(r, params.phi_ref));
        trace.status = res.budget_exhausted ? RunStatus::budget_exhausted
                                            : RunStatus::terminated;
        return trace;
      }
      default: break;
    }
    throw std::logic_error("run_experiment: unhandled composite algorithm");
  }

  const auto& inst = std::get<LcqpInstance>(instance);
  ConstrainedProblem problem = inst.to_problem();
  const double D = problem.diameter();
  RunTrace trace;

  switch (algo) {
    case Algo::ialm: {
      IalmConfig cfg = IalmConfig::practical_defaults(params.eps);
      if (params.rho) cfg.rho = *params.rho;
      if (params.sigma) cfg.sigma = *params.sigma;
      if (params.alpha) cfg.alpha = *params.alpha;
      if (params.eps0) cfg.eps0 = *params.eps0;
      cfg.max_outer = params.max_outer;
      cfg.inner_budget = params.inner_budget;
      cfg.verify_certificates = params.verify_certificates;
      IalmResult res = run_ialm(problem, cfg, inst.start());
      for (const auto& r : res.trace) trace.rows.push_back(alm_row(r, D));
      trace.status =
          res.converged ? RunStatus::terminated : RunStatus::budget_exhausted;
      return trace;
    }
    case Algo::ifalm: {
      FalmConfig cfg =
          FalmConfig::defaults(problem, params.eps, params.rhat.value_or(1000.0), false,
                               params.alpha.value_or(0.85));
      if (params.rho) {
        cfg.rho = *params.rho;
        cfg.eps0 = 1.0 / cfg.rho;
      }
      if (params.sigma) cfg.sigma = *params.sigma;
      if (params.eps0) cfg.eps0 = *params.eps0;
      cfg.x0 = inst.start();
      cfg.max_outer = params.max_outer;
      cfg.inner_budget = params.inner_budget;
      cfg.verify_certificates = params.verify_certificates;
      FalmResult res = run_ifalm(problem, cfg);
      for (const auto& r : res.trace) trace.rows.push_back(alm_row(r, D));
      trace.status =
          res.converged ? RunStatus::terminated : RunStatus::budget_exhausted;
      return trace;
    }
    case Algo::lpalm: {
      double rho = params.rho.value_or(lpalm_default_rho(problem));
      LpalmResult res = run_lpalm(problem, rho, params.eps,
                                  static_cast<int>(params.inner_budget), inst.start());
      for (const auto& r : res.trace) trace.rows.push_back(alm_row(r, D));
      trace.status =
          res.converged ? RunStatus::terminated : RunStatus::budget_exhausted;
      return trace;
    }
    default: break;
  }
  throw std::logic_error("run_experiment: unhandled constrained algorithm");
}

}  // namespace arco
