#include "delaywave/cutoff.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include "delaywave/error.hpp"

namespace delaywave {
namespace {

double exp_weight(double s) { return s < 0.0 ? std::exp(s) : 1.0; }

std::array<double, 4> lagrange4(double t) {
  return {-(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0, t * (t - 2.0) * (t - 3.0) / 2.0,
          -t * (t - 1.0) * (t - 3.0) / 2.0, t * (t - 1.0) * (t - 2.0) / 6.0};
}

}  // namespace

CutoffValues cutoff_and_weight(double x) noexcept {
  CutoffValues v{};
  if (x <= 0.0) {
    v.psi = 1.0;
  } else if (x >= 1.0) {
    v.psi = 0.0;
  } else {
    const double x2 = x * x;
    const double x3 = x2 * x;
    v.psi = 1.0 - x3 * (10.0 + x * (-15.0 + 6.0 * x));
    v.dpsi = -30.0 * x2 * (x - 1.0) * (x - 1.0);
    v.d2psi = -60.0 * x * (1.0 + x * (-3.0 + 2.0 * x));
  }
  v.mu = 1.0 + x * x;
  v.dmu = 2.0 * x;
  v.d2mu = 2.0;
  return v;
}

double cutoff(double x) noexcept { return cutoff_and_weight(x).psi; }

double cutoff_complement(double x) noexcept {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

Grid Grid::symmetric(double L, std::size_t n) {
  if (!(L > 0.0) || n < 5 || n % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("grid needs L > 0 and odd n >= 5 (got L={}, n={})", L, n));
  }
  return Grid{-L, 2.0 * L / static_cast<double>(n - 1), n};
}

std::optional<std::size_t> Grid::zero_node() const noexcept {
  const std::size_t i = center();
  if (std::abs(x(i)) <= 1e-9 * h) return i;
  return std::nullopt;
}

std::size_t Grid::center() const noexcept {
  const double r = std::round(-x0 / h);
  if (r <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(r), n - 1);
}

SpeedFunctional::SpeedFunctional(const Grid& grid) : grid_(grid), weights_(grid.n, 0.0) {
  const std::size_t n = grid.n;
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "speed functional needs >= 4 nodes");
  const auto zero = grid.zero_node();
  const auto last_start = static_cast<std::ptrdiff_t>(n - 4);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    auto start = static_cast<std::ptrdiff_t>(j) - 1;
    if (zero) {
      const auto z = static_cast<std::ptrdiff_t>(*zero);
      if (static_cast<std::ptrdiff_t>(j) >= z) {
        start = std::max(start, z);
      } else {
        start = std::min(start, z - 3);
      }
    }
    start = std::clamp<std::ptrdiff_t>(start, 0, last_start);
    const double base = grid.x(static_cast<std::size_t>(start));
    const double a = grid.x(j);
    const double b = grid.x(j + 1);
    std::array<double, 3> cuts{a, b, b};
    std::size_t pieces = 1;
    if (a < 0.0 && b > 0.0 && !(zero && (*zero == j || *zero == j + 1))) {
      cuts = {a, 0.0, b};
      pieces = 2;
    }
    for (std::size_t p = 0; p < pieces; ++p) {
      for (std::size_t k = 0; k < 4; ++k) {
        const auto integrand = [&](double s) {
          return lagrange4((s - base) / grid.h)[k] * exp_weight(s);
        };
        weights_[static_cast<std::size_t>(start) + k] +=
            boost::math::quadrature::gauss<double, 6>::integrate(integrand, cuts[p], cuts[p + 1]);
      }
    }
  }
  weights_[0] += std::exp(std::min(grid.x0, 0.0));
}

double SpeedFunctional::rho_of_profile(std::span<const double> w) const {
  if (w.size() != grid_.n) throw Error(ErrorCode::InvalidArgument, "profile size mismatch");
  double rho = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) rho += weights_[i] * w[i] * w[i];
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorCode::NonpositiveRho, fmt::format("rho(u) = {} is not positive", rho));
  }
  return rho;
}

double SpeedFunctional::speed_of_profile(std::span<const double> w) const {
  return 0.5 * std::log(rho_of_profile(w));
}

std::vector<double> SpeedFunctional::gradient_of_profile(std::span<const double> w) const {
  const double rho = rho_of_profile(w);
  std::vector<double> g(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) g[i] = weights_[i] * w[i] / rho;
  return g;
}

std::vector<double> profile_from_offset(std::span<const double> u, const Grid& grid) {
  if (u.size() != grid.n) throw Error(ErrorCode::InvalidArgument, "offset size mismatch");
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + cutoff(grid.x(i));
  return w;
}

double c_functional(std::span<const double> u, const Grid& grid) {
  return SpeedFunctional(grid).speed_of_profile(profile_from_offset(u, grid));
}

double c_functional_gradient(std::span<const double> u, std::span<const double> h,
                             const Grid& grid) {
  if (h.size() != grid.n) throw Error(ErrorCode::InvalidArgument, "direction size mismatch");
  const auto g = SpeedFunctional(grid).gradient_of_profile(profile_from_offset(u, grid));
  double sum = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) sum += g[i] * h[i];
  return sum;
}

}  // namespace delaywave
