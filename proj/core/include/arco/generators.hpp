#pragma once

#include <cstdint>

#include "arco/core.hpp"
#include "arco/prox.hpp"

namespace arco {

/// Sparse least squares with l1 penalty,
///   min 0.5 ||Ax - b||^2 + gamma ||x||_1,
/// A m-by-n with the given density and standard-normal nonzeros, b uniform on
/// [0,1]. Deterministic in (dims, seed). L_f = ||A||^2, solvers start at 0.
struct LassoInstance {
  int n = 0, m = 0;
  double density = 0.0, gamma = 0.0;
  std::uint64_t seed = 0;
  SparseMatrix A;
  Vector b;
  double op_norm = 0.0;  // ||A||

  CompositeProblem to_problem() const;
  Vector start() const { return Vector::Zero(n); }
};

LassoInstance gen_lasso(int n, int m, double density, double gamma, std::uint64_t seed);

/// Box-constrained quadratic with equality constraints,
///   min 0.5 x'Mx + c'x  s.t.  Ax = b,  -10 <= x_i <= 10,
/// M = R R' / ||R R'|| of rank r (so L_f = ||M|| = 1), c and b standard
/// normal, A with Bernoulli(density) * normal entries, D = 20 sqrt(n).
struct LcqpInstance {
  int n = 0, m = 0, r = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  Matrix M;
  Vector c;
  Matrix A;
  Vector b;
  double box_lo = -10.0, box_hi = 10.0;

  double diameter() const { return (box_hi - box_lo) * std::sqrt(double(n)); }
  ConstrainedProblem to_problem() const;
  Vector start() const { return Vector::Zero(n); }
};

LcqpInstance gen_lcqp(int n, int m, int r, double density, std::uint64_t seed);

}  // namespace arco
