// Command-line front end: instance generation, single solves with trace
// output, and performance profiles over a directory of traces.
//
// Exit codes: 0 success/terminated, 2 budget exhausted, 64 usage error.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>

#include "arco/profile.hpp"
#include "arco/runner.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;

int cmd_gen_lasso(int n, int m, double density, double gamma, std::uint64_t seed,
                  const std::string& out) {
  arco::LassoInstance inst = arco::gen_lasso(n, m, density, gamma, seed);
  arco::save_problem(inst, out);
  std::cout << "wrote LASSO instance (n=" << n << ", m=" << m << ", ||A||=" << inst.op_norm
            << ") to " << out << "\n";
  return kExitOk;
}

int cmd_gen_lcqp(int n, int m, int r, double density, std::uint64_t seed,
                 const std::string& out) {
  arco::LcqpInstance inst = arco::gen_lcqp(n, m, r, density, seed);
  arco::save_problem(inst, out);
  std::cout << "wrote LCQP instance (n=" << n << ", m=" << m << ", r=" << r << ") to "
            << out << "\n";
  return kExitOk;
}

int cmd_solve(const std::string& problem_path, const std::string& algo_name,
              const arco::SolveParams& params, const std::string& trace_path) {
  arco::ProblemInstance inst = arco::load_problem(problem_path);
  arco::Algo algo = arco::parse_algo(algo_name);
  arco::RunTrace trace = arco::run_experiment(inst, algo, params);
  if (!trace_path.empty()) arco::write_trace_csv(trace, trace_path);

  if (!trace.rows.empty()) {
    const arco::TraceRow& last = trace.rows.back();
    std::cout << algo_name << ": " << last.prox_evals << " prox evals, "
              << last.wall_time_s << " s, objective " << last.objective;
    if (std::isfinite(last.feasibility)) std::cout << ", feasibility " << last.feasibility;
    std::cout << "\n";
  }
  if (trace.status == arco::RunStatus::budget_exhausted) {
    std::cout << "budget exhausted before reaching the target\n";
    return kExitBudget;
  }
  return kExitOk;
}

int cmd_profile(const std::string& dir, const std::string& metric,
                const std::string& out) {
  // Expects trace files named <problem>__<solver>.csv.
  std::map<std::string, std::map<std::string, std::pair<double, bool>>> table;
  std::vector<std::string> solvers;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".csv") continue;
    std::string stem = entry.path().stem().string();
    auto sep = stem.rfind("__");
    if (sep == std::string::npos) continue;
    std::string problem = stem.substr(0, sep);
    std::string solver = stem.substr(sep + 2);
    arco::RunTrace trace = arco::read_trace_csv_file(entry.path().string());
    if (trace.rows.empty()) continue;
    double value = metric == "time" ? trace.rows.back().wall_time_s
                                    : double(trace.rows.back().prox_evals);
    bool failed = trace.status == arco::RunStatus::budget_exhausted;
    table[problem][solver] = {value, failed};
    if (std::find(solvers.begin(), solvers.end(), solver) == solvers.end())
      solvers.push_back(solver);
  }
  if (table.empty() || solvers.empty()) {
    std::cerr << "profile: no '<problem>__<solver>.csv' traces found in " << dir << "\n";
    return kExitUsage;
  }
  std::sort(solvers.begin(), solvers.end());

  const int P = static_cast<int>(table.size());
  const int S = static_cast<int>(solvers.size());
  arco::Matrix values(P, S);
  std::vector<std::vector<bool>> failed(P, std::vector<bool>(S, true));
  int p = 0;
  for (const auto& [problem, row] : table) {
    for (int s = 0; s < S; ++s) {
      auto it = row.find(solvers[s]);
      if (it != row.end()) {
        values(p, s) = it->second.first;
        failed[p][s] = it->second.second;
      } else {
        values(p, s) = 0.0;
      }
    }
    ++p;
  }

  arco::ProfileCurves curves = arco::performance_profile(values, failed);
  for (const auto& w : curves.warnings) std::cerr << "profile: " << w << "\n";
  arco::write_profile_csv(curves, solvers, out);
  std::cout << "wrote profile over " << curves.problems_used << " problems and " << S
            << " solvers to " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-order composite optimization solvers and benchmark harness"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a problem instance");
  gen->require_subcommand(1);

  int n = 1000, m = 500, rank = 10;
  double density = 0.2, gamma = 0.5;
  std::uint64_t seed = 0;
  std::string out_file;

  auto* lasso = gen->add_subcommand("lasso", "sparse least squares with l1 penalty");
  lasso->add_option("--n", n, "number of variables")->required();
  lasso->add_option("--m", m, "number of rows")->required();
  lasso->add_option("--density", density, "fill-in of A")->default_val(0.2);
  lasso->add_option("--gamma", gamma, "l1 weight")->default_val(0.5);
  lasso->add_option("--seed", seed, "generator seed")->default_val(0);
  lasso->add_option("--out", out_file, "output path")->required();

  auto* lcqp = gen->add_subcommand("lcqp", "box-constrained QP with equality constraints");
  lcqp->add_option("--n", n, "number of variables")->required();
  lcqp->add_option("--m", m, "number of constraints")->required();
  lcqp->add_option("--rank", rank, "rank of the quadratic term")->required();
  lcqp->add_option("--density", density, "fill-in of A")->default_val(0.1);
  lcqp->add_option("--seed", seed, "generator seed")->default_val(0);
  lcqp->add_option("--out", out_file, "output path")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "run one solver on one instance");
  std::string problem_path, algo_name, trace_path;
  arco::SolveParams params;
  double rho = 0, sigma_v = 0, alpha_v = 0, eps0_v = 0, lambda_v = 0, rhat_v = 0,
         phi_ref_v = 0;
  solve->add_option("--problem", problem_path, "instance file")->required();
  solve->add_option("--algo", algo_name,
                    "acg|racg|grad_restart|speed_restart|pgm|ialm|ifalm|lpalm")
      ->required();
  solve->add_option("--eps", params.eps, "target accuracy")->default_val(1e-3);
  solve->add_option("--max-outer", params.max_outer, "outer iteration cap")
      ->default_val(1000);
  solve->add_option("--inner-budget", params.inner_budget,
                    "inner iteration cap (total budget for single-loop solvers)")
      ->default_val(500000);
  auto* rho_opt = solve->add_option("--rho", rho, "penalty parameter");
  auto* sigma_opt = solve->add_option("--sigma", sigma_v, "relative-error parameter");
  auto* alpha_opt = solve->add_option("--alpha", alpha_v, "error decay rate");
  auto* eps0_opt = solve->add_option("--eps0", eps0_v, "initial error tolerance");
  auto* lambda_opt = solve->add_option("--lambda", lambda_v, "proximal stepsize");
  auto* rhat_opt = solve->add_option("--rhat", rhat_v, "dual radius estimate");
  auto* ref_opt = solve->add_option("--phi-ref", phi_ref_v,
                                    "reference objective for gap-based stopping");
  solve->add_flag("--verify-certificates", params.verify_certificates,
                  "run the auxiliary dual-gap checks each outer step");
  solve->add_option("--trace", trace_path, "trace CSV output path");

  // profile
  auto* profile = app.add_subcommand("profile", "performance profile over traces");
  std::string traces_dir, metric = "time", profile_out;
  profile->add_option("--traces", traces_dir, "directory of <problem>__<solver>.csv")
      ->required();
  profile->add_option("--metric", metric, "time|prox")
      ->check(CLI::IsMember({"time", "prox"}))
      ->default_val("time");
  profile->add_option("--out", profile_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (lasso->parsed()) return cmd_gen_lasso(n, m, density, gamma, seed, out_file);
    if (lcqp->parsed()) return cmd_gen_lcqp(n, m, rank, density, seed, out_file);
    if (solve->parsed()) {
      if (*rho_opt) params.rho = rho;
      if (*sigma_opt) params.sigma = sigma_v;
      if (*alpha_opt) params.alpha = alpha_v;
      if (*eps0_opt) params.eps0 = eps0_v;
      if (*lambda_opt) params.lambda = lambda_v;
      if (*rhat_opt) params.rhat = rhat_v;
      if (*ref_opt) params.phi_ref = phi_ref_v;
      return cmd_solve(problem_path, algo_name, params, trace_path);
    }
    if (profile->parsed()) return cmd_profile(traces_dir, metric, profile_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
