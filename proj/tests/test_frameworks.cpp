#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arco/frameworks.hpp"
#include "arco/generators.hpp"
#include "helpers.hpp"

using namespace arco;

namespace {

ValueHandle composite_value(const CompositeProblem& p) {
  return [p](const Vector& x) -> std::optional<double> { return p.objective(x); };
}

// 1-D instance f(x) = (x-3)^2/2, h = |.|: minimizer 2, value 2.5.
CompositeProblem shifted_lasso_1d() {
  SmoothOracle f(
      [](const Vector& x) {
        Vector d = x.array() - 3.0;
        return Eval{0.5 * d.squaredNorm(), d};
      },
      1.0);
  return CompositeProblem(std::move(f), l1_prox(1.0), 1);
}

}  // namespace

TEST_CASE("lora certificate edge cases") {
  SUBCASE("all-equal iterates with matching values accept") {
    LoraRecord rec;
    rec.x_k = Vector::Zero(2);
    rec.y_next = rec.x_k;
    rec.x_next = rec.x_k;
    rec.u_hat = Vector::Zero(2);
    rec.lambda = 1.0;
    rec.sigma = 0.5;
    rec.delta = 0.0;
    rec.Gamma = [](const Vector&) { return std::optional<double>(1.0); };
    auto Phi = [](const Vector&) { return std::optional<double>(1.0); };
    CHECK(lora_certificate(rec, Phi));
  }

  SUBCASE("large delta always accepts") {
    LoraRecord rec;
    rec.x_k = Vector::Zero(1);
    rec.y_next = Vector::Ones(1);
    rec.x_next = Vector::Zero(1);
    rec.u_hat = Vector::Ones(1);
    rec.lambda = 1.0;
    rec.sigma = 0.1;
    rec.delta = 1e9;
    rec.Gamma = [](const Vector&) { return std::optional<double>(0.0); };
    auto Phi = [](const Vector&) { return std::optional<double>(5.0); };
    CHECK(lora_certificate(rec, Phi));
  }
}

TEST_CASE("proximal gradient as a lower-oracle instance") {
  SUBCASE("one exact step on f(x) = x^2/2") {
    SmoothOracle f([](const Vector& x) { return Eval{0.5 * x.squaredNorm(), x}; }, 1.0);
    CompositeProblem p(f, zero_prox(), 1);
    Vector x0(1);
    x0 << 1.0;
    auto records = pgm_run_as_lora(p, x0, 1.0, 1);
    REQUIRE(records.size() == 1);
    CHECK(records[0].y_next[0] == doctest::Approx(0.0));
    CHECK(lora_certificate(records[0], composite_value(p)));
  }

  SUBCASE("1-D soft threshold reaches the minimizer in one step") {
    CompositeProblem p = shifted_lasso_1d();
    Vector x0 = Vector::Zero(1);
    auto records = pgm_run_as_lora(p, x0, 1.0, 1);
    CHECK(records[0].y_next[0] == doctest::Approx(2.0));
  }

  SUBCASE("certificate holds at every step with equality-level slack") {
    auto q = test::random_quadratic(6, 0.2, 2.5, 71);
    CompositeProblem p(q.oracle(), l1_prox(0.4), 6);
    RngStream rng(7);
    Vector x0 = test::random_vector(6, rng);
    auto records = pgm_run_as_lora(p, x0, 1.0 / q.eig_max, 60);
    auto Phi = composite_value(p);
    for (const auto& rec : records) CHECK(lora_certificate(rec, Phi));
  }

  SUBCASE("rejects eta > 1/L_f") {
    CompositeProblem p = shifted_lasso_1d();
    CHECK_THROWS_AS(pgm_run_as_lora(p, Vector::Zero(1), 2.0, 1), std::invalid_argument);
  }
}

TEST_CASE("proximal-subproblem interpretation against grid search") {
  // Phi(y_{k+1}) + ||y-x_k||^2/(2 lambda) <= Phi(x_hat) + ||x_hat-x_k||^2/(2 lambda)
  //   + sigma ||y-x_k||^2/(2 lambda) + delta, x_hat from a 1e-6 grid.
  CompositeProblem p = shifted_lasso_1d();
  auto Phi = composite_value(p);
  double eta = 0.7;  // lambda_L = eta
  Vector x0 = Vector::Zero(1);
  auto records = pgm_run_as_lora(p, x0, eta, 8);

  for (const auto& rec : records) {
    // two-stage grid search at 1e-6 resolution
    auto prox_obj = [&](double z) {
      Vector zv(1);
      zv << z;
      return *Phi(zv) + (z - rec.x_k[0]) * (z - rec.x_k[0]) / (2.0 * rec.lambda);
    };
    double best = 0.0, best_val = std::numeric_limits<double>::infinity();
    for (double z = -5.0; z <= 5.0; z += 1e-3) {
      if (double v = prox_obj(z); v < best_val) {
        best_val = v;
        best = z;
      }
    }
    for (double z = best - 2e-3; z <= best + 2e-3; z += 1e-6) {
      if (double v = prox_obj(z); v < best_val) {
        best_val = v;
        best = z;
      }
    }
    double lhs = prox_obj(rec.y_next[0]);
    double rhs = best_val +
                 rec.sigma * (rec.y_next - rec.x_k).squaredNorm() / (2.0 * rec.lambda) +
                 rec.delta;
    CHECK(lhs <= rhs + 1e-9);
  }
}

TEST_CASE("lora theorem monitors with closed-form optimum") {
  CompositeProblem p = shifted_lasso_1d();
  auto Phi = composite_value(p);
  Vector x0 = Vector::Zero(1);
  double eta = 1.0;
  auto records = pgm_run_as_lora(p, x0, eta, 40);
  double R0 = 2.0;        // |x0 - x*|
  double Phi_star = 2.5;  // (2-3)^2/2 + |2|
  MonitorReport rep = lora_monitor(records, Phi, R0, Phi_star);
  CHECK(rep.all_pass);
  CHECK(rep.gap.size() == records.size());
}

TEST_CASE("acg satisfies the accelerated certificate at every iteration") {
  // correspondence: sigma_F = 1/2, lambda_F = 1/(2L), z = y~, u_hat = 0, delta = 0
  auto q = test::random_quadratic(8, 0.3, 3.0, 72);
  CompositeProblem p(q.oracle(), l1_prox(0.2), 8);
  double L = q.eig_max, mu = 0.0;
  RngStream rng(8);
  Vector x0 = test::random_vector(8, rng);

  AcgState st = acg_init(p, x0, L, mu);
  auto Phi = composite_value(p);
  for (int j = 0; j < 80; ++j) {
    Vector x_tilde_expect;  // filled after the step from state
    acg_step(p, st);
    FloraRecord rec;
    rec.x_tilde = st.x_tilde;
    rec.y_tilde_next = st.y_tilde;
    rec.z_next = st.y_tilde;
    rec.u_hat = Vector::Zero(8);
    rec.u = st.u;
    rec.b = st.scalars.a;
    rec.B = st.scalars.A;
    rec.tau = st.scalars.tau;
    rec.delta0 = 0.0;
    rec.alpha = 0.0;
    rec.mu = mu;
    rec.lambda = 1.0 / (2.0 * L);
    rec.sigma = 0.5;
    rec.k = j;
    // Gamma_j = l_g(.; x_tilde) + h + (2L+mu)/2 ||. - x_tilde||^2
    Vector xt = st.x_tilde;
    Eval gx = p.f(xt);
    ProxOracle h = p.h;
    rec.Gamma = [xt, gx, h, L, mu](const Vector& u) -> std::optional<double> {
      auto hv = h.value(u);
      if (!hv) return std::nullopt;
      Vector d = u - xt;
      return gx.value + gx.grad.dot(d) + *hv + 0.5 * (2.0 * L + mu) * d.squaredNorm();
    };
    CHECK(flora_certificate(rec, Phi));

    // u_{j+1} = u_hat + (x_tilde - z)/lambda_F consistency
    Vector u_expect = rec.u_hat + (rec.x_tilde - rec.z_next) / rec.lambda;
    CHECK((rec.u - u_expect).norm() <= 1e-9 * (1.0 + rec.u.norm()));
  }
}

TEST_CASE("restarted outer steps satisfy the accelerated certificate") {
  LassoInstance inst = gen_lasso(40, 20, 0.3, 0.5, 91);
  CompositeProblem p = inst.to_problem();
  double lambda = 0.2, sigma = 0.5;
  RestartState st = racg_init(p, inst.start(), lambda, 0.0);
  auto Phi = composite_value(p);
  for (int k = 0; k < 10; ++k) {
    REQUIRE(racg_outer_step(st, p, p.f.L(), 0.0, lambda, sigma, 100000));
    FloraRecord rec = restart_step_as_flora(st, lambda, sigma, 0.0);
    CHECK(flora_certificate(rec, Phi));
  }
}

TEST_CASE("flora monitors") {
  SUBCASE("delta0 = 0 reduces to the plain gap bound") {
    auto q = test::random_quadratic(10, 0.05, 1.0, 73);
    auto p = q.problem();
    double lambda = 2.0, sigma = 0.5;
    RestartState st = racg_init(p, Vector::Ones(10), lambda, 0.0);
    std::vector<FloraRecord> records;
    for (int k = 0; k < 15; ++k) {
      racg_outer_step(st, p, q.eig_max, 0.0, lambda, sigma, 100000);
      records.push_back(restart_step_as_flora(st, lambda, sigma, 0.0));
    }
    double R0 = (Vector::Ones(10) - q.x_star).norm();
    MonitorReport rep = flora_monitor(records, composite_value(p), R0, 0.0);
    CHECK(rep.all_pass);
  }
}

TEST_CASE("delta recursion equals its closed form") {
  OuterScalars sc(1.0, 0.0);
  std::vector<double> B;
  for (int k = 0; k < 60; ++k) {
    sc.advance();
    B.push_back(sc.B);
  }
  auto rec = flora_delta_recursion(0.3, 0.25, B);
  auto closed = flora_delta_closed_form(0.3, 0.25, B);
  REQUIRE(rec.size() == closed.size());
  for (std::size_t k = 0; k < rec.size(); ++k) {
    CHECK(rec[k] == doctest::Approx(closed[k]).epsilon(1e-12));
  }
  // and the tail bound delta0 C / B_{k+1}
  double C = weighted_coefficient_sum(1.0, 0.0, 0.25);
  for (std::size_t k = 0; k < rec.size(); ++k) {
    CHECK(rec[k] <= 0.3 * C / B[k] + 1e-12);
  }
}

TEST_CASE("weighted sum special cases") {
  // alpha = 0: C = B_1 = lambda
  CHECK(weighted_coefficient_sum(0.7, 0.0, 0.0) == doctest::Approx(0.7));
  // lambda = 1, mu = 0, alpha = 0.25: converges and stays below 1/(1-0.5)^4
  double C = weighted_coefficient_sum(1.0, 0.0, 0.25);
  CHECK(C <= 16.0);
  CHECK(C == doctest::Approx(weighted_coefficient_sum(1.0, 0.0, 0.25)));
}
