#include "arco/generators.hpp"

#include <memory>
#include <vector>

#include "arco/rng.hpp"

namespace arco {

LassoInstance gen_lasso(int n, int m, double density, double gamma, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("gen_lasso: n, m must be >= 1");
  if (density < 0.0 || density > 1.0)
    throw std::invalid_argument("gen_lasso: density must lie in [0,1]");
  if (gamma < 0.0) throw std::invalid_argument("gen_lasso: gamma must be >= 0");

  LassoInstance inst;
  inst.n = n;
  inst.m = m;
  inst.density = density;
  inst.gamma = gamma;
  inst.seed = seed;

  RngStream rng(seed);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(density * m * n * 1.1) + 16);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (rng.uniform() < density) entries.emplace_back(i, j, rng.normal());
    }
  }
  inst.A.resize(m, n);
  inst.A.setFromTriplets(entries.begin(), entries.end());
  inst.A.makeCompressed();

  inst.b.resize(m);
  for (int i = 0; i < m; ++i) inst.b[i] = rng.uniform();

  inst.op_norm = operator_norm(inst.A);
  return inst;
}

CompositeProblem LassoInstance::to_problem() const {
  auto Ap = std::make_shared<const SparseMatrix>(A);
  Vector bv = b;
  auto eval = [Ap, bv = std::move(bv)](const Vector& x) {
    Vector r = (*Ap) * x - bv;
    Eval e;
    e.value = 0.5 * r.squaredNorm();
    e.grad = Ap->transpose() * r;
    return e;
  };
  SmoothOracle f(std::move(eval), op_norm * op_norm, 0.0);
  return CompositeProblem(std::move(f), l1_prox(gamma), n);
}

LcqpInstance gen_lcqp(int n, int m, int r, double density, std::uint64_t seed) {
  if (n < 1 || m < 1 || r < 1) throw std::invalid_argument("gen_lcqp: n, m, r must be >= 1");
  if (n < std::max(r, m))
    throw std::invalid_argument("gen_lcqp: requires n >= max{r, m}");
  if (density < 0.0 || density > 1.0)
    throw std::invalid_argument("gen_lcqp: density must lie in [0,1]");

  LcqpInstance inst;
  inst.n = n;
  inst.m = m;
  inst.r = r;
  inst.density = density;
  inst.seed = seed;

  RngStream rng(seed);
  Matrix R(n, r);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j) R(i, j) = rng.normal();
  Matrix Mt = R * R.transpose();
  double norm = operator_norm(Mt);
  inst.M = Mt / norm;

  inst.c.resize(n);
  for (int i = 0; i < n; ++i) inst.c[i] = rng.normal();

  inst.A.resize(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double present = rng.uniform();
      inst.A(i, j) = present < density ? rng.normal() : 0.0;
    }
  }

  inst.b.resize(m);
  for (int i = 0; i < m; ++i) inst.b[i] = rng.normal();
  return inst;
}

ConstrainedProblem LcqpInstance::to_problem() const {
  auto Mp = std::make_shared<const Matrix>(M);
  Vector cv = c;
  auto eval = [Mp, cv = std::move(cv)](const Vector& x) {
    Vector Mx = (*Mp) * x;
    Eval e;
    e.value = 0.5 * x.dot(Mx) + cv.dot(x);
    e.grad = Mx + cv;
    return e;
  };
  SmoothOracle f(std::move(eval), 1.0, 0.0);  // ||M|| = 1 after rescaling
  CompositeProblem base(std::move(f), box_prox(n, box_lo, box_hi), n);
  return ConstrainedProblem(std::move(base), A, b, diameter());
}

}  // namespace arco
