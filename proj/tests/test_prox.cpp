#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arco/prox.hpp"
#include "arco/rng.hpp"
#include "helpers.hpp"

using namespace arco;

TEST_CASE("soft threshold") {
  Vector x(1);
  x << 3.0;
  CHECK(prox_l1(x, 1.0, 1.0)[0] == doctest::Approx(2.0));

  x << -0.5;
  CHECK(prox_l1(x, 1.0, 1.0)[0] == 0.0);

  // gamma = 0 is the identity
  RngStream rng(1);
  Vector y = test::random_vector(7, rng);
  CHECK((prox_l1(y, 0.7, 0.0) - y).norm() == 0.0);

  // tie |x| = t*gamma lands exactly at zero
  x << 1.0;
  CHECK(prox_l1(x, 2.0, 0.5)[0] == 0.0);

  CHECK_THROWS_AS(prox_l1(x, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(prox_l1(x, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("box clamp") {
  Vector x(1);
  x << 15.0;
  CHECK(prox_box(x, -10.0, 10.0)[0] == 10.0);

  Vector inside(3);
  inside << -1.0, 0.0, 9.9;
  CHECK((prox_box(inside, -10.0, 10.0) - inside).norm() == 0.0);

  Vector mixed(3);
  mixed << -11.0, 0.0, 12.0;
  Vector expect(3);
  expect << -10.0, 0.0, 10.0;
  CHECK((prox_box(mixed, -10.0, 10.0) - expect).norm() == 0.0);

  Vector lo(2), hi(2);
  lo << 0.0, 1.0;
  hi << 1.0, 0.5;  // lo > hi in the second slot
  CHECK_THROWS_AS(prox_box(Vector::Zero(2), lo, hi), std::invalid_argument);
}

TEST_CASE("zero prox is the identity") {
  RngStream rng(2);
  for (int t = 0; t < 3; ++t) {
    Vector x = test::random_vector(5, rng, 3.0);
    CHECK((prox_zero(x) - x).norm() == 0.0);
  }
}

TEST_CASE("sq_shift prox solves its optimality condition") {
  RngStream rng(3);
  Vector center = test::random_vector(4, rng);
  ProxOracle h = make_prox(ProxKind::sq_shift(0.8, center));
  for (int t = 0; t < 10; ++t) {
    Vector x = test::random_vector(4, rng, 2.0);
    double step = 0.1 + rng.uniform();
    Vector p = h.prox(x, step);
    // 0 = gamma (p - c) + (p - x)/t
    Vector resid = 0.8 * (p - center) + (p - x) / step;
    CHECK(resid.norm() < 1e-10);
  }
}

TEST_CASE("prox optimality condition where the subdifferential is single-valued") {
  RngStream rng(4);
  ProxOracle l1 = l1_prox(0.6);
  for (int t = 0; t < 50; ++t) {
    Vector x = test::random_vector(6, rng, 2.0);
    double step = 0.2 + rng.uniform();
    Vector p = l1.prox(x, step);
    for (int i = 0; i < 6; ++i) {
      if (p[i] == 0.0) continue;  // kink
      double sub = 0.6 * (p[i] > 0 ? 1.0 : -1.0);
      CHECK(std::abs(sub + (p[i] - x[i]) / step) < 1e-10);
    }
  }
}

TEST_CASE("nonexpansiveness on random pairs") {
  RngStream rng(5);
  ProxOracle ops[] = {l1_prox(0.5), box_prox(8, -1.0, 2.0),
                      make_prox(ProxKind::sq_shift(1.2, Vector::Zero(8))), zero_prox()};
  for (const auto& op : ops) {
    for (int t = 0; t < 250; ++t) {
      Vector x = test::random_vector(8, rng, 3.0);
      Vector y = test::random_vector(8, rng, 3.0);
      double step = 0.1 + 2.0 * rng.uniform();
      CHECK((op.prox(x, step) - op.prox(y, step)).norm() <= (x - y).norm() + 1e-12);
    }
  }
}

TEST_CASE("box indicator value") {
  ProxOracle box = box_prox(2, -1.0, 1.0);
  Vector in(2), out(2);
  in << 0.5, -1.0;
  out << 1.5, 0.0;
  CHECK(box.value(in).value() == 0.0);
  CHECK(!box.value(out).has_value());
}
