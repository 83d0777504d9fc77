#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "arco/core.hpp"
#include "arco/prox.hpp"
#include "arco/rng.hpp"

namespace arco::test {

inline Vector random_vector(int n, RngStream& rng, double scale = 1.0) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * rng.normal();
  return v;
}

/// Dense PSD quadratic 0.5 (x - x*)' Q (x - x*) with prescribed eigenvalue
/// range; Q from a random orthogonal basis so the minimizer and optimal value
/// (= 0) are exact.
struct Quadratic {
  Matrix Q;
  Vector x_star;
  double eig_min = 0.0;
  double eig_max = 0.0;

  SmoothOracle oracle() const {
    Matrix Qc = Q;
    Vector xs = x_star;
    return SmoothOracle(
        [Qc, xs](const Vector& x) {
          Vector d = x - xs;
          Vector Qd = Qc * d;
          return Eval{0.5 * d.dot(Qd), Qd};
        },
        eig_max, eig_min);
  }

  CompositeProblem problem() const {
    return CompositeProblem(oracle(), zero_prox(), static_cast<int>(Q.rows()));
  }
};

/// Requires 0 < eig_min <= eig_max; spectrum log-spaced between them.
inline Quadratic random_quadratic(int n, double eig_min, double eig_max,
                                  std::uint64_t seed) {
  RngStream rng(seed);
  Matrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix U = qr.householderQ();

  Vector eigs(n);
  for (int i = 0; i < n; ++i) {
    double t = n == 1 ? 1.0 : double(i) / (n - 1);
    eigs[i] = eig_min * std::pow(eig_max / eig_min, t);
  }

  Quadratic q;
  q.Q = U * eigs.asDiagonal() * U.transpose();
  q.Q = 0.5 * (q.Q + q.Q.transpose());  // symmetrize round-off
  q.x_star = random_vector(n, rng);
  q.eig_min = eig_min;
  q.eig_max = operator_norm(q.Q);
  return q;
}

/// Hand-solved constrained instance: min 0.5||x||^2 s.t. x1 + x2 = 1 on the
/// box [-10,10]^2. Solution x* = (0.5, 0.5), lambda* = -0.5, optimal value 0.25.
inline ConstrainedProblem tiny_lcqp() {
  SmoothOracle f([](const Vector& x) { return Eval{0.5 * x.squaredNorm(), x}; }, 1.0,
                 0.0);
  CompositeProblem base(std::move(f), box_prox(2, -10.0, 10.0), 2);
  Matrix A(1, 2);
  A << 1.0, 1.0;
  Vector b(1);
  b << 1.0;
  return ConstrainedProblem(std::move(base), A, b, 20.0 * std::sqrt(2.0));
}

/// max_i |grad_i - (f(x + h e_i) - f(x - h e_i)) / 2h|
inline double finite_difference_error(const SmoothOracle& f, const Vector& x,
                                      double h = 1e-6) {
  Eval e = f(x);
  double worst = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    double fd = (f(xp).value - f(xm).value) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - e.grad[i]));
  }
  return worst;
}

}  // namespace arco::test
