#include "arco/core.hpp"

#include <cmath>

#include "arco/rng.hpp"

namespace arco {

double operator_norm(const std::function<Vector(const Vector&)>& apply,
                     const std::function<Vector(const Vector&)>& apply_adjoint,
                     int cols, double tol, int max_iters) {
  if (cols < 1) throw std::invalid_argument("operator_norm: empty operator");
  // Seeded start avoids starting orthogonal to the top singular vector.
  RngStream rng(0x9e3779b97f4a7c15ull);
  Vector v(cols);
  for (int i = 0; i < cols; ++i) v[i] = 1.0 + 0.01 * rng.uniform();
  v.normalize();

  double sigma = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Vector w = apply_adjoint(apply(v));
    double nw = w.norm();
    if (nw == 0.0) return 0.0;  // A v = 0 from a generic start: A = 0
    double sigma_new = std::sqrt(nw);
    v = w / nw;
    if (it > 0 && std::abs(sigma_new - sigma) <= tol * std::max(1.0, sigma_new)) {
      return sigma_new;
    }
    sigma = sigma_new;
  }
  return sigma;
}

double operator_norm(const Matrix& A, double tol, int max_iters) {
  return operator_norm([&](const Vector& x) { return Vector(A * x); },
                       [&](const Vector& y) { return Vector(A.transpose() * y); },
                       static_cast<int>(A.cols()), tol, max_iters);
}

double operator_norm(const SparseMatrix& A, double tol, int max_iters) {
  return operator_norm([&](const Vector& x) { return Vector(A * x); },
                       [&](const Vector& y) { return Vector(A.transpose() * y); },
                       static_cast<int>(A.cols()), tol, max_iters);
}

GradientMapping gradient_mapping(const SmoothOracle& smooth, const ProxOracle& h,
                                 const Vector& x, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("gradient_mapping: eta must be positive");
  Eval e = smooth(x);
  GradientMapping gm;
  gm.x_plus = h.prox(x - eta * e.grad, eta);
  gm.G = (x - gm.x_plus) / eta;
  return gm;
}

GradientMapping gradient_mapping(const CompositeProblem& problem, const Vector& x,
                                 double eta) {
  return gradient_mapping(problem.f, problem.h, x, eta);
}

SmoothOracle augmented_lagrangian_oracle(const ConstrainedProblem& problem,
                                         const Vector& lambda, double rho) {
  if (!(rho > 0.0))
    throw std::invalid_argument("augmented_lagrangian_oracle: rho must be positive");
  auto A = problem.shared_A();
  Vector b = problem.b();
  SmoothOracle f = problem.base().f;
  double M_rho = f.L() + rho * problem.op_norm_A() * problem.op_norm_A();
  auto eval = [A, b = std::move(b), f = std::move(f), lambda, rho](const Vector& x) {
    Eval fe = f(x);
    Vector r = (*A) * x - b;
    Eval out;
    out.value = fe.value + lambda.dot(r) + 0.5 * rho * r.squaredNorm();
    out.grad = fe.grad + A->transpose() * (lambda + rho * r);
    return out;
  };
  return SmoothOracle(std::move(eval), M_rho, problem.base().f.mu());
}

KktCertificate kkt_certificate(const ConstrainedProblem& problem, const Vector& x_tilde,
                               const Vector& lambda, double eta, double rho,
                               const SmoothOracle& smooth) {
  if (!(eta > 0.0)) throw std::invalid_argument("kkt_certificate: eta must be positive");
  if (eta * smooth.L() > 1.0 + 1e-12)
    throw std::invalid_argument("kkt_certificate: requires eta <= 1/L(smooth)");

  Eval at_tilde = smooth(x_tilde);
  Vector x_plus = problem.base().h.prox(x_tilde - eta * at_tilde.grad, eta);
  Vector G = (x_tilde - x_plus) / eta;
  Eval at_plus = smooth(x_plus);

  KktCertificate cert;
  cert.v = G - at_tilde.grad + at_plus.grad;
  cert.v_norm = cert.v.norm();
  Vector r = problem.residual(x_plus);
  cert.feas = r.norm();
  cert.x = std::move(x_plus);
  cert.lambda = lambda + rho * r;
  return cert;
}

double primal_gap_bound(const KktCertificate&, double eps, double lambda_norm,
                        double diameter) {
  return eps * (lambda_norm + diameter);
}

}  // namespace arco
