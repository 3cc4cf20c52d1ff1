#include "delaywave/norms.hpp"

#include <algorithm>
#include <cmath>

#include "delaywave/error.hpp"

namespace delaywave {
namespace {

double sup_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> first_difference(std::span<const double> v, double h, double left,
                                     double right) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  const auto at = [&](std::ptrdiff_t i) {
    return i < 0 ? left : (i >= n ? right : v[static_cast<std::size_t>(i)]);
  };
  std::vector<double> d(v.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    d[static_cast<std::size_t>(i)] =
        (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h);
  }
  return d;
}

std::vector<double> second_difference(std::span<const double> v, double h, double left,
                                      double right) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  const auto at = [&](std::ptrdiff_t i) {
    return i < 0 ? left : (i >= n ? right : v[static_cast<std::size_t>(i)]);
  };
  std::vector<double> d(v.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    d[static_cast<std::size_t>(i)] =
        (-at(i - 2) + 16.0 * at(i - 1) - 30.0 * at(i) + 16.0 * at(i + 1) - at(i + 2)) /
        (12.0 * h * h);
  }
  return d;
}

double holder_seminorm(std::span<const double> values, double h, double alpha, int max_level) {
  if (!(h > 0.0) || !(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "holder seminorm needs h > 0 and alpha in (0, 1)");
  }
  double best = 0.0;
  for (int level = 0; level <= max_level; ++level) {
    const std::size_t k = std::size_t{1} << level;
    if (k >= values.size()) break;
    const double scale = std::pow(static_cast<double>(k) * h, alpha);
    for (std::size_t i = 0; i + k < values.size(); ++i) {
      best = std::max(best, std::abs(values[i + k] - values[i]) / scale);
    }
  }
  return best;
}

WeightedNorm weighted_norm(std::span<const double> u, const Grid& grid, double alpha) {
  if (u.size() != grid.n) throw Error(ErrorCode::InvalidArgument, "weighted norm: size mismatch");
  const std::size_t n = u.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = u[i] + cutoff(grid.x(i));
  const auto dw = first_difference(w, grid.h, 1.0, 0.0);
  const auto d2w = second_difference(w, grid.h, 1.0, 0.0);
  std::vector<double> p(n);
  std::vector<double> dp(n);
  std::vector<double> d2p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CutoffValues cv = cutoff_and_weight(grid.x(i));
    const double du = dw[i] - cv.dpsi;
    const double d2u = d2w[i] - cv.d2psi;
    p[i] = cv.mu * u[i];
    dp[i] = cv.dmu * u[i] + cv.mu * du;
    d2p[i] = cv.d2mu * u[i] + 2.0 * cv.dmu * du + cv.mu * d2u;
  }
  WeightedNorm out;
  out.sup_p = sup_abs(p);
  out.sup_dp = sup_abs(dp);
  out.sup_d2p = sup_abs(d2p);
  out.holder_d2p = holder_seminorm(d2p, grid.h, alpha);
  out.total = out.sup_p + out.sup_dp + out.sup_d2p + out.holder_d2p;
  return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 3) throw Error(ErrorCode::InvalidArgument, "line fit needs >= 3 points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::InvalidArgument, "line fit: degenerate abscissae");
  LineFit fit{};
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += r * r;
  }
  fit.slope_stderr = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
  fit.points = n;
  return fit;
}

}  // namespace delaywave
