#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>

namespace arco {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Value and gradient of a smooth function at a point.
struct Eval {
  double value = 0.0;
  Vector grad;
};

/// First-order oracle for a smooth convex function: one call returns both
/// the value and the gradient. `L()` is a Lipschitz constant of the
/// gradient, `mu()` a strong convexity modulus (0 if merely convex).
class SmoothOracle {
 public:
  using EvalFn = std::function<Eval(const Vector&)>;

  SmoothOracle() = default;
  SmoothOracle(EvalFn eval, double smoothness, double strong_convexity = 0.0)
      : eval_(std::move(eval)), L_(smoothness), mu_(strong_convexity) {
    if (!(L_ >= 0.0) || !(mu_ >= 0.0))
      throw std::invalid_argument("SmoothOracle: L and mu must be nonnegative");
    if (mu_ > L_)
      throw std::invalid_argument("SmoothOracle: mu must not exceed L");
  }

  Eval operator()(const Vector& x) const { return eval_(x); }
  double L() const { return L_; }
  double mu() const { return mu_; }
  bool valid() const { return static_cast<bool>(eval_); }

 private:
  EvalFn eval_;
  double L_ = 0.0;
  double mu_ = 0.0;
};

/// Oracle for a simple (proximable) convex function h.
///
/// `value` returns std::nullopt where h is +infinity; infinities never enter
/// floating-point arithmetic. `prox(x, t)` evaluates
/// argmin_u { h(u) + ||u - x||^2 / (2t) } for t > 0.
class ProxOracle {
 public:
  using ValueFn = std::function<std::optional<double>(const Vector&)>;
  using ProxFn = std::function<Vector(const Vector&, double)>;

  ProxOracle() = default;
  ProxOracle(ValueFn value, ProxFn prox)
      : value_(std::move(value)), prox_(std::move(prox)) {}

  std::optional<double> value(const Vector& x) const { return value_(x); }

  Vector prox(const Vector& x, double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("ProxOracle::prox: step must be positive");
    return prox_(x, t);
  }

  bool valid() const { return static_cast<bool>(prox_); }

 private:
  ValueFn value_;
  ProxFn prox_;
};

/// Composite problem min phi(x) = f(x) + h(x) with f smooth and h proximable.
struct CompositeProblem {
  SmoothOracle f;
  ProxOracle h;
  int n = 0;

  CompositeProblem() = default;
  CompositeProblem(SmoothOracle f_, ProxOracle h_, int dim)
      : f(std::move(f_)), h(std::move(h_)), n(dim) {
    if (n < 1) throw std::invalid_argument("CompositeProblem: dimension must be >= 1");
  }

  /// phi(x) = f(x) + h(x); nullopt where h is infinite.
  std::optional<double> objective(const Vector& x) const {
    auto hv = h.value(x);
    if (!hv) return std::nullopt;
    return f(x).value + *hv;
  }
};

/// Spectral norm by power iteration on A^T A. Deterministic start vector,
/// stops when the estimate changes by less than `tol` (relative) or after
/// `max_iters` rounds. The estimate approaches the true norm from below.
double operator_norm(const std::function<Vector(const Vector&)>& apply,
                     const std::function<Vector(const Vector&)>& apply_adjoint,
                     int cols, double tol = 1e-10, int max_iters = 10000);
double operator_norm(const Matrix& A, double tol = 1e-10, int max_iters = 10000);
double operator_norm(const SparseMatrix& A, double tol = 1e-10, int max_iters = 10000);

/// Linearly constrained composite problem: min f(x)+h(x) s.t. Ax = b,
/// with dom h bounded (diameter D >= 1). ||A|| is computed once at
/// construction by power iteration and cached.
class ConstrainedProblem {
 public:
  ConstrainedProblem(CompositeProblem base, Matrix A, Vector b, double diameter)
      : base_(std::move(base)),
        A_(std::make_shared<const Matrix>(std::move(A))),
        b_(std::move(b)),
        diameter_(diameter) {
    if (A_->rows() != b_.size())
      throw std::invalid_argument("ConstrainedProblem: A and b dimensions disagree");
    if (A_->cols() != base_.n)
      throw std::invalid_argument("ConstrainedProblem: A and problem dimensions disagree");
    if (A_->rows() > A_->cols())
      throw std::invalid_argument("ConstrainedProblem: requires m <= n");
    if (!(diameter_ >= 1.0))
      throw std::invalid_argument("ConstrainedProblem: diameter must be >= 1");
    op_norm_ = operator_norm(*A_);
  }

  const CompositeProblem& base() const { return base_; }
  const Matrix& A() const { return *A_; }
  const Vector& b() const { return b_; }
  int n() const { return base_.n; }
  int m() const { return static_cast<int>(b_.size()); }
  double diameter() const { return diameter_; }
  double op_norm_A() const { return op_norm_; }
  std::shared_ptr<const Matrix> shared_A() const { return A_; }

  Vector residual(const Vector& x) const { return (*A_) * x - b_; }

  /// L(x, lambda) = phi(x) + <lambda, Ax - b>; nullopt outside dom h.
  std::optional<double> lagrangian(const Vector& x, const Vector& lambda) const {
    auto phi = base_.objective(x);
    if (!phi) return std::nullopt;
    return *phi + lambda.dot(residual(x));
  }

 private:
  CompositeProblem base_;
  std::shared_ptr<const Matrix> A_;
  Vector b_;
  double diameter_;
  double op_norm_;
};

struct GradientMapping {
  Vector G;       // (x - x_plus) / eta
  Vector x_plus;  // prox_{eta h}(x - eta grad f(x))
};

/// Gradient mapping of f + h at x with stepsize eta > 0.
GradientMapping gradient_mapping(const CompositeProblem& problem, const Vector& x,
                                 double eta);

/// Same, for a caller-supplied smooth part (h taken from `problem`).
GradientMapping gradient_mapping(const SmoothOracle& smooth, const ProxOracle& h,
                                 const Vector& x, double eta);

/// Smooth part of the augmented Lagrangian,
///   Psi_lambda(x) = f(x) + <lambda, Ax-b> + (rho/2) ||Ax-b||^2,
/// with smoothness constant M_rho = L_f + rho ||A||^2.
SmoothOracle augmented_lagrangian_oracle(const ConstrainedProblem& problem,
                                         const Vector& lambda, double rho);

/// Approximate KKT certificate: an explicit subgradient v of the Lagrangian
/// L(., lambda) at x together with the feasibility residual. The pair
/// (x, lambda) is an eps-primal-dual solution iff ||v|| <= eps and
/// ||Ax - b|| <= eps.
struct KktCertificate {
  Vector v;
  double v_norm = 0.0;
  double feas = 0.0;
  Vector x;
  Vector lambda;

  bool satisfies(double eps) const { return v_norm <= eps && feas <= eps; }
};

/// Extracts a KKT certificate from an approximate stationary point x_tilde of
/// smooth + h, where `smooth` is the (possibly perturbed) augmented-Lagrangian
/// smooth part in use by the caller. Computes x_plus by one prox-gradient step
/// with stepsize eta <= 1/L(smooth), the multiplier update
/// lambda_plus = lambda + rho (A x_plus - b), and the explicit subgradient
///   v = (x_tilde - x_plus)/eta - grad smooth(x_tilde) + grad smooth(x_plus),
/// which satisfies ||v|| <= 2 ||G|| and v in dL(., lambda_plus)(x_plus).
KktCertificate kkt_certificate(const ConstrainedProblem& problem, const Vector& x_tilde,
                               const Vector& lambda, double eta, double rho,
                               const SmoothOracle& smooth);

/// Guaranteed bound on |phi(x) - phi_*| for an eps-primal-dual certificate:
/// eps * (||lambda|| + D).
double primal_gap_bound(const KktCertificate& cert, double eps, double lambda_norm,
                        double diameter);

}  // namespace arco
