#include <doctest.h>

#include <cmath>

#include "delaywave/cutoff.hpp"
#include "delaywave/error.hpp"

using namespace delaywave;

TEST_CASE("cutoff and weight") {
  CHECK(cutoff(-3.0) == 1.0);
  CHECK(cutoff(0.0) == 1.0);
  CHECK(cutoff(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cutoff(1.0) == 0.0);
  CHECK(cutoff(7.0) == 0.0);
  CHECK(cutoff_complement(1e-3) == doctest::Approx(10e-9 - 15e-12 + 6e-15).epsilon(1e-12));
  const CutoffValues v = cutoff_and_weight(0.25);
  // psi = 1 - (10 t^3 - 15 t^4 + 6 t^5)
  CHECK(v.psi == doctest::Approx(1.0 - (0.15625 - 0.05859375 + 0.005859375)).epsilon(1e-15));
  CHECK(v.dpsi == doctest::Approx(-30.0 * 0.0625 * 0.5625).epsilon(1e-14));
  CHECK(v.mu == 1.0625);
  CHECK(v.dmu == 0.5);
  CHECK(v.d2mu == 2.0);
  for (double x : {0.0, 1.0}) {
    const CutoffValues e = cutoff_and_weight(x);
    CHECK(e.dpsi == 0.0);
    CHECK(e.d2psi == 0.0);
  }
}

TEST_CASE("symmetric grid") {
  const Grid g = Grid::symmetric(60.0, 2401);
  CHECK(g.h == doctest::Approx(0.05));
  CHECK(g.x(0) == -60.0);
  CHECK(g.right() == doctest::Approx(60.0));
  REQUIRE(g.zero_node().has_value());
  CHECK(*g.zero_node() == 1200);
  CHECK(g.center() == 1200);
  CHECK_FALSE(g.shifted(0.01).zero_node().has_value());
  CHECK_THROWS_AS(Grid::symmetric(60.0, 2400), Error);
  CHECK_THROWS_AS(Grid::symmetric(-1.0, 11), Error);
}

TEST_CASE("speed functional closed forms") {
  for (std::size_t n : {2401u, 4801u}) {
    const Grid g = Grid::symmetric(60.0, n);
    // u = 0: rho = 1 + int_0^1 psi^2 = 1 + 181/462
    const std::vector<double> zero(n, 0.0);
    CHECK(std::abs(c_functional(zero, g) - 0.16528991657794027) <= 1e-6);
    CHECK(0.5 * std::log(1.0 + 181.0 / 462.0) == doctest::Approx(0.16528991657794027).epsilon(1e-15));

    // w = e^{-|s|}: rho = 1/3 + 1/2
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = std::exp(-std::abs(g.x(i))) - cutoff(g.x(i));
    CHECK(std::abs(c_functional(u, g) - (-0.091160778396977313)) <= 1e-6);
  }
}

TEST_CASE("speed functional on a shifted grid") {
  // the kink of e^{-|s|} is no longer a node: second-order accuracy only
  const Grid g = Grid::symmetric(60.0, 2401).shifted(0.0123);
  std::vector<double> u(g.n);
  for (std::size_t i = 0; i < g.n; ++i) u[i] = std::exp(-std::abs(g.x(i))) - cutoff(g.x(i));
  CHECK(std::abs(c_functional(u, g) - (-0.091160778396977313)) <= 1e-4);
}

TEST_CASE("speed functional gradient matches differences") {
  const Grid g = Grid::symmetric(30.0, 601);
  std::vector<double> u(g.n);
  std::vector<double> h(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    u[i] = 0.3 * std::exp(-x * x / 4.0);
    h[i] = std::cos(x) * std::exp(-x * x / 50.0);
  }
  const double e = 1e-6;
  std::vector<double> up(u), um(u);
  for (std::size_t i = 0; i < g.n; ++i) {
    up[i] += e * h[i];
    um[i] -= e * h[i];
  }
  const double fd = (c_functional(up, g) - c_functional(um, g)) / (2 * e);
  CHECK(c_functional_gradient(u, h, g) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("nonpositive rho is rejected") {
  const Grid g = Grid::symmetric(10.0, 201);
  std::vector<double> u(g.n);
  for (std::size_t i = 0; i < g.n; ++i) u[i] = -cutoff(g.x(i));
  try {
    c_functional(u, g);
    FAIL("expected NonpositiveRho");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonpositiveRho);
  }
}
