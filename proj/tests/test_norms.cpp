#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "delaywave/error.hpp"
#include "delaywave/norms.hpp"

using namespace delaywave;

TEST_CASE("holder seminorm of |x|^alpha is one") {
  const double h = 0.01;
  std::vector<double> v;
  for (int i = -500; i <= 500; ++i) v.push_back(std::sqrt(std::abs(i * h)));
  CHECK(holder_seminorm(v, h, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("holder seminorm of a line peaks at the largest separation") {
  const double h = 0.01;
  std::vector<double> v;
  for (int i = 0; i < 3000; ++i) v.push_back(2.0 * i * h);
  CHECK(holder_seminorm(v, h, 0.5, 10) == doctest::Approx(2.0 * std::sqrt(1024 * h)).epsilon(1e-12));
  CHECK_THROWS_AS(holder_seminorm(v, h, 1.0), Error);
}

TEST_CASE("fourth-order differences are exact on quartics") {
  const double h = 0.1;
  std::vector<double> v;
  for (int i = 0; i < 40; ++i) {
    const double x = i * h;
    v.push_back(x * x * x * x - 2.0 * x * x + x);
  }
  const auto d1 = first_difference(v, h, 0.0, 0.0);
  const auto d2 = second_difference(v, h, 0.0, 0.0);
  for (int i = 2; i < 38; ++i) {
    const double x = i * h;
    CHECK(d1[i] == doctest::Approx(4 * x * x * x - 4 * x + 1).epsilon(1e-10));
    CHECK(d2[i] == doctest::Approx(12 * x * x - 4).epsilon(1e-9));
  }
}

TEST_CASE("weighted norm of a smooth front") {
  // w = 1 / (1 + e^{2x}), u = w - psi; p'' assembled from exact derivatives
  double holder[2];
  for (int k = 0; k < 2; ++k) {
    const Grid g = Grid::symmetric(60.0, k == 0 ? 2401 : 4801);
    std::vector<double> u(g.n), p(g.n), dp(g.n), d2p(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      const double x = g.x(i);
      const double w = 1.0 / (1.0 + std::exp(2.0 * x));
      const double dw = -2.0 * w * (1.0 - w);
      const double d2w = -2.0 * dw * (1.0 - 2.0 * w);
      const CutoffValues cv = cutoff_and_weight(x);
      u[i] = w - cv.psi;
      const double du = dw - cv.dpsi;
      const double d2u = d2w - cv.d2psi;
      p[i] = std::abs(cv.mu * u[i]);
      dp[i] = std::abs(cv.dmu * u[i] + cv.mu * du);
      d2p[i] = cv.d2mu * u[i] + 2.0 * cv.dmu * du + cv.mu * d2u;
    }
    const WeightedNorm norm = weighted_norm(u, g);
    CHECK(norm.sup_p == doctest::Approx(*std::max_element(p.begin(), p.end())).epsilon(1e-12));
    CHECK(norm.sup_dp == doctest::Approx(*std::max_element(dp.begin(), dp.end())).epsilon(1e-5));
    double sup = 0.0;
    for (double v : d2p) sup = std::max(sup, std::abs(v));
    CHECK(norm.sup_d2p == doctest::Approx(sup).epsilon(1e-5));
    CHECK(norm.holder_d2p == doctest::Approx(holder_seminorm(d2p, g.h, 0.5)).epsilon(1e-4));
    CHECK(norm.total == doctest::Approx(norm.sup_p + norm.sup_dp + norm.sup_d2p + norm.holder_d2p));
    holder[k] = norm.holder_d2p;
  }
  // the jumps of psi''' at 0 and 1 leave [p'']_{1/2} resolution independent
  CHECK(holder[1] == doctest::Approx(holder[0]).epsilon(0.01));
}

TEST_CASE("line fit") {
  std::vector<double> x{0, 1, 2, 3, 4};
  std::vector<double> y{1, 3, 5, 7, 9};
  const LineFit fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.slope_stderr == doctest::Approx(0.0));
  std::vector<double> noisy{1, 3.1, 4.9, 7.1, 8.9};
  CHECK(fit_line(x, noisy).slope_stderr > 0.0);
  CHECK_THROWS_AS(fit_line(std::vector<double>{1, 2}, std::vector<double>{1, 2}), Error);
}
