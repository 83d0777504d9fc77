#pragma once

#include <optional>
#include <string>

#include "arco/io.hpp"
#include "arco/trace.hpp"

namespace arco {

enum class Algo { acg, racg, grad_restart, speed_restart, pgm, ialm, ifalm, lpalm };

Algo parse_algo(const std::string& name);
std::string algo_name(Algo algo);
bool algo_needs_constraints(Algo algo);

/// Knobs shared by all solvers; unset optionals fall back to per-solver
/// defaults. For the single-loop composite solvers `inner_budget` is the
/// total iteration budget; the double-loop solvers use `max_outer` outer
/// steps of at most `inner_budget` inner iterations each.
struct SolveParams {
  double eps = 1e-3;
  int max_outer = 1000;
  long inner_budget = 500000;
  std::optional<double> rho;
  std::optional<double> sigma;
  std::optional<double> alpha;
  std::optional<double> eps0;
  std::optional<double> lambda;
  std::optional<double> rhat;
  std::optional<double> phi_ref;  // gap reference for composite solvers
  bool verify_certificates = false;
};

/// Runs one (problem, solver) pair and returns its trace. Throws
/// std::invalid_argument on incompatible pairings (constrained solvers need
/// an LCQP instance and vice versa).
RunTrace run_experiment(const ProblemInstance& instance, Algo algo,
                        const SolveParams& params);

}  // namespace arco
