#include <doctest.h>

#include <cmath>

#include "delaywave/error.hpp"
#include "delaywave/spectrum.hpp"

using namespace delaywave;

namespace {
const ResponseFunction A = ResponseFunction::polynomial(0.0, 1.2, 3.0);
const ResponseFunction B = ResponseFunction::polynomial(0.5, 0.8, 2.6);
}  // namespace

TEST_CASE("essential curves") {
  const SpectrumReport r = essential_curves(A, -0.2, 0.7);
  REQUIRE(r.xi.size() == 4001);
  CHECK(r.xi.front() == -20.0);
  CHECK(r.xi.back() == 20.0);
  // lambda_+(0) = 1 - f(0), lambda_-(0) = -1 - f'(1)
  CHECK(r.max_re_plus == doctest::Approx(-0.2).epsilon(1e-14));
  CHECK(r.max_re_minus == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(r.ns);
  CHECK(r.margin == doctest::Approx(0.2).epsilon(1e-14));
  for (std::size_t i = 0; i < r.xi.size(); ++i) {
    const std::size_t j = r.xi.size() - 1 - i;
    CHECK(r.plus[i] == std::conj(r.plus[j]));
    CHECK(r.minus[i] == std::conj(r.minus[j]));
  }
}

TEST_CASE("condition NS boundary at f(0) = 1") {
  const NsVerdict v = condition_ns(ResponseFunction::polynomial(0.0, 1.0, 3.0), 0.1, 0.5);
  CHECK_FALSE(v.satisfied);
  CHECK(v.margin == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(condition_ns(B, 0.3, 2.0).satisfied);
}

TEST_CASE("plus-side roots") {
  // c = 0, f(0) = 1.2: z = -+ sqrt(0.2)
  const CharacteristicRoots r = characteristic_roots(A, 0.0, 0.0, TailSide::Plus);
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[0] == doctest::Approx(-0.44721359549995794).epsilon(1e-15));
  CHECK(r.roots[1] == doctest::Approx(0.44721359549995794).epsilon(1e-15));
  CHECK(r.decay_rate() == doctest::Approx(0.44721359549995794).epsilon(1e-15));
  // c = 0.2: z^2 + 0.2 z - 0.2 = 0
  const CharacteristicRoots s = characteristic_roots(A, 0.2, 1.0, TailSide::Plus);
  CHECK(s.roots[0] == doctest::Approx((-0.2 - std::sqrt(0.84)) / 2).epsilon(1e-14));
  CHECK(s.roots[1] == doctest::Approx((-0.2 + std::sqrt(0.84)) / 2).epsilon(1e-14));
}

TEST_CASE("plus-side decay grows with f(0)") {
  double prev = 0.0;
  for (double f0 : {1.05, 1.2, 1.4}) {
    const double rate =
        characteristic_roots(ResponseFunction::polynomial(0.0, f0, 3.0), 0.1, 0.0, TailSide::Plus)
            .decay_rate();
    CHECK(rate > prev);
    prev = rate;
  }
}

TEST_CASE("minus-side root") {
  // kappa = 0: f'(1) = 0, the equation is z^2 + c z - 1 = 0
  const CharacteristicRoots r = characteristic_roots(A, 0.2, 1.3, TailSide::Minus);
  REQUIRE(r.roots.size() == 1);
  CHECK(std::abs(r.roots[0] - 0.90498756211208903) <= 1e-10);
  CHECK(r.decay_rate() == r.roots[0]);

  // kappa = 0.5 with delay: check the residual of the transcendental equation
  for (double c : {-0.6, -0.1, 0.0, 0.4}) {
    for (double tau : {0.0, 1.0, 2.0}) {
      const CharacteristicRoots m = characteristic_roots(B, c, tau, TailSide::Minus);
      const double z = m.roots[0];
      CHECK(z > 0.0);
      CHECK(std::abs(z * z + c * z - 1.0 - (-0.5) * std::exp(c * tau * z)) < 1e-12);
    }
  }
}

TEST_CASE("no purely imaginary minus-side roots") {
  // |(iy)^2 + i c y - 1| >= 1 with equality at y = 0
  CHECK(imaginary_axis_gap(B, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(imaginary_axis_gap(A, 0.3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tail_side_name(TailSide::Plus) == "plus");
}
