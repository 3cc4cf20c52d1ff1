#include <doctest.h>

#include <cmath>
#include <random>
#include <tuple>
#include <vector>

#include "delaywave/banded.hpp"
#include "delaywave/error.hpp"

using namespace delaywave;

namespace {

// Dense Gaussian elimination with partial pivoting, the reference solver.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    }
    std::swap(a[k], a[p]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
      b[i] -= m * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

TEST_CASE("band LU agrees with dense elimination") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto [n, kl, ku] : {std::tuple<std::size_t, std::size_t, std::size_t>{12, 2, 2},
                           {30, 4, 3}, {9, 1, 5}}) {
    BandMatrix m(n, kl, ku);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!m.in_band(i, j)) continue;
        // small diagonal forces pivoting
        const double v = i == j ? 0.05 * u(rng) : u(rng);
        m.set(i, j, v);
        dense[i][j] = v;
      }
    }
    std::vector<double> b(n);
    for (double& v : b) v = u(rng);
    const auto expected = dense_solve(dense, b);
    const BandLU lu(m);
    const auto x = lu.solve(b);
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(expected[i]).epsilon(1e-9));
    const auto back = m.multiply(x);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - b[i]) < 1e-11);
  }
}

TEST_CASE("band matrix element access") {
  BandMatrix m(5, 1, 2);
  m.set(2, 4, 3.0);
  m.add(2, 4, 1.5);
  CHECK(m.get(2, 4) == 4.5);
  CHECK(m.get(4, 0) == 0.0);
  m.clear_row(2);
  CHECK(m.get(2, 4) == 0.0);
  CHECK_THROWS_AS(m.set(4, 0, 1.0), Error);
}

TEST_CASE("singular band matrix is reported") {
  BandMatrix m(4, 1, 1);
  m.set(0, 0, 1.0);
  m.set(1, 1, 1.0);
  m.set(3, 3, 1.0);
  try {
    BandLU lu(m);
    FAIL("expected SingularJacobian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularJacobian);
  }
}

TEST_CASE("tridiagonal solver") {
  const std::size_t n = 40;
  std::vector<double> sub(n, -1.0), diag(n, 2.5), super(n, -1.0);
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    dense[i][i] = diag[i];
    if (i > 0) dense[i][i - 1] = sub[i];
    if (i + 1 < n) dense[i][i + 1] = super[i];
  }
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = std::sin(0.3 * static_cast<double>(i));
  const auto expected = dense_solve(dense, b);
  const TridiagonalSolver solver(sub, diag, super);
  solver.solve_in_place(b);
  for (std::size_t i = 0; i < n; ++i) CHECK(b[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}
