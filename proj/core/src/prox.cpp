#include "arco/prox.hpp"

#include <cmath>

namespace arco {

Vector prox_l1(const Vector& x, double t, double gamma) {
  if (!(t > 0.0)) throw std::invalid_argument("prox_l1: step must be positive");
  if (gamma < 0.0) throw std::invalid_argument("prox_l1: gamma must be nonnegative");
  const double tg = t * gamma;
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double m = std::abs(x[i]) - tg;
    out[i] = m > 0.0 ? (x[i] > 0.0 ? m : -m) : 0.0;
  }
  return out;
}

Vector prox_box(const Vector& x, const Vector& lo, const Vector& hi) {
  if (lo.size() != x.size() || hi.size() != x.size())
    throw std::invalid_argument("prox_box: bound dimensions disagree");
  if ((lo.array() > hi.array()).any())
    throw std::invalid_argument("prox_box: requires lo <= hi componentwise");
  return x.cwiseMax(lo).cwiseMin(hi);
}

Vector prox_box(const Vector& x, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("prox_box: requires lo <= hi");
  return x.cwiseMax(lo).cwiseMin(hi);
}

ProxOracle make_prox(const ProxKind& kind) {
  return std::visit(
      [](const auto& k) -> ProxOracle {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ProxKind::Zero>) {
          return ProxOracle([](const Vector&) { return std::optional<double>(0.0); },
                            [](const Vector& x, double) { return x; });
        } else if constexpr (std::is_same_v<T, ProxKind::L1>) {
          if (k.gamma < 0.0) throw std::invalid_argument("ProxKind::l1: gamma < 0");
          double g = k.gamma;
          return ProxOracle(
              [g](const Vector& x) { return std::optional<double>(g * x.lpNorm<1>()); },
              [g](const Vector& x, double t) { return prox_l1(x, t, g); });
        } else if constexpr (std::is_same_v<T, ProxKind::Box>) {
          if ((k.lo.array() > k.hi.array()).any())
            throw std::invalid_argument("ProxKind::box: requires lo <= hi");
          Vector lo = k.lo, hi = k.hi;
          return ProxOracle(
              [lo, hi](const Vector& x) -> std::optional<double> {
                if ((x.array() < lo.array()).any() || (x.array() > hi.array()).any())
                  return std::nullopt;
                return 0.0;
              },
              [lo, hi](const Vector& x, double) { return prox_box(x, lo, hi); });
        } else {
          static_assert(std::is_same_v<T, ProxKind::SqShift>);
          if (k.gamma < 0.0) throw std::invalid_argument("ProxKind::sq_shift: gamma < 0");
          double g = k.gamma;
          Vector c = k.center;
          return ProxOracle(
              [g, c](const Vector& x) {
                return std::optional<double>(0.5 * g * (x - c).squaredNorm());
              },
              [g, c](const Vector& x, double t) {
                return Vector((x + t * g * c) / (1.0 + t * g));
              });
        }
      },
      kind.tag);
}

}  // namespace arco
