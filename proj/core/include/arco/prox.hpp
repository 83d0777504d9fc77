#pragma once

#include <variant>

#include "arco/core.hpp"

namespace arco {

/// Componentwise soft threshold: sign(x_i) max(|x_i| - t*gamma, 0).
/// Ties |x_i| = t*gamma resolve to 0 (closed dead zone).
Vector prox_l1(const Vector& x, double t, double gamma);

/// Componentwise clamp onto [lo, hi]; independent of the step.
Vector prox_box(const Vector& x, const Vector& lo, const Vector& hi);
Vector prox_box(const Vector& x, double lo, double hi);

inline Vector prox_zero(const Vector& x, double /*t*/ = 1.0) { return x; }

/// Tagged description of the closed-form proximal operators shipped here.
/// sq_shift is h(x) = (gamma/2) ||x - center||^2; it exists for tests of
/// perturbed objectives only -- the solver pipelines keep quadratic
/// perturbations inside the smooth oracle, so do not also add them here.
struct ProxKind {
  struct Zero {};
  struct L1 {
    double gamma;
  };
  struct Box {
    Vector lo, hi;
  };
  struct SqShift {
    double gamma;
    Vector center;
  };
  std::variant<Zero, L1, Box, SqShift> tag;

  static ProxKind zero() { return {Zero{}}; }
  static ProxKind l1(double gamma) { return {L1{gamma}}; }
  static ProxKind box(Vector lo, Vector hi) { return {Box{std::move(lo), std::move(hi)}}; }
  static ProxKind box(int n, double lo, double hi) {
    return box(Vector::Constant(n, lo), Vector::Constant(n, hi));
  }
  static ProxKind sq_shift(double gamma, Vector center) {
    return {SqShift{gamma, std::move(center)}};
  }
};

ProxOracle make_prox(const ProxKind& kind);

inline ProxOracle zero_prox() { return make_prox(ProxKind::zero()); }
inline ProxOracle l1_prox(double gamma) { return make_prox(ProxKind::l1(gamma)); }
inline ProxOracle box_prox(int n, double lo, double hi) {
  return make_prox(ProxKind::box(n, lo, hi));
}

}  // namespace arco
