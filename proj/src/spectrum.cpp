#include "delaywave/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "delaywave/error.hpp"

namespace delaywave {
namespace {

constexpr double kRootLo = 1e-6;
constexpr double kRootHi = 10.0;
constexpr double kRootTol = 1e-14;
constexpr int kMaxNewton = 60;

}  // namespace

SpectrumReport essential_curves(const ResponseFunction& f, double c, double tau, double xi_max,
                                std::size_t n_xi) {
  if (n_xi < 2 || !(xi_max > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "spectrum grid needs xi_max > 0 and n_xi >= 2");
  }
  const double f0 = f.value(0.0);
  const double fp1 = f.derivative(1.0, 1);
  SpectrumReport r;
  r.c = c;
  r.tau = tau;
  r.xi.resize(n_xi);
  r.plus.resize(n_xi);
  r.minus.resize(n_xi);
  r.max_re_plus = -std::numeric_limits<double>::infinity();
  r.max_re_minus = -std::numeric_limits<double>::infinity();
  const double step = 2.0 * xi_max / static_cast<double>(n_xi - 1);
  for (std::size_t k = 0; k < n_xi; ++k) {
    // Mirror the grid explicitly so that conjugate symmetry holds bitwise.
    const double xi = k < n_xi / 2 ? -(xi_max - static_cast<double>(k) * step)
                                   : xi_max - static_cast<double>(n_xi - 1 - k) * step;
    const double base = -xi * xi;
    r.xi[k] = xi;
    r.plus[k] = {base + 1.0 - f0, c * xi};
    const double phase = c * tau * xi;
    r.minus[k] = {base - 1.0 - fp1 * std::cos(phase), c * xi - fp1 * std::sin(phase)};
    r.max_re_plus = std::max(r.max_re_plus, r.plus[k].real());
    r.max_re_minus = std::max(r.max_re_minus, r.minus[k].real());
  }
  r.margin = -std::max(r.max_re_plus, r.max_re_minus);
  r.ns = r.max_re_plus < 0.0 && r.max_re_minus < 0.0;
  return r;
}

NsVerdict condition_ns(const ResponseFunction& f, double c, double tau) {
  const SpectrumReport r = essential_curves(f, c, tau);
  return {r.ns, r.margin};
}

std::string_view tail_side_name(TailSide side) noexcept {
  return side == TailSide::Plus ? "plus" : "minus";
}

double CharacteristicRoots::decay_rate() const {
  return side == TailSide::Plus ? -roots.front() : roots.front();
}

CharacteristicRoots characteristic_roots(const ResponseFunction& f, double c, double tau,
                                         TailSide side) {
  if (side == TailSide::Plus) {
    const double k = 1.0 - f.value(0.0);
    const double disc = c * c - 4.0 * k;
    if (disc < 0.0) {
      throw Error(ErrorCode::RootNotFound,
                  fmt::format("plus-side characteristic equation has no real roots (c={})", c));
    }
    const double sq = std::sqrt(disc);
    // Stable form: avoid cancellation in the smaller root.
    const double big = c >= 0.0 ? -0.5 * (c + sq) : 0.5 * (-c + sq);
    const double other = big != 0.0 ? k / big : 0.0;
    CharacteristicRoots out{side, {std::min(big, other), std::max(big, other)}, 0.0};
    for (double z : out.roots) out.residual = std::max(out.residual, std::abs(z * z + c * z + k));
    return out;
  }

  const double fp1 = f.derivative(1.0, 1);
  const auto g = [&](double z) { return z * z + c * z - 1.0 - fp1 * std::exp(c * tau * z); };
  const auto dg = [&](double z) { return 2.0 * z + c - fp1 * c * tau * std::exp(c * tau * z); };
  double lo = kRootLo;
  double hi = kRootHi;
  double glo = g(lo);
  if (!(glo < 0.0) || !(g(hi) > 0.0)) {
    throw Error(ErrorCode::RootNotFound,
                fmt::format("minus-side root not bracketed in [{}, {}] (c={}, tau={})", lo, hi, c,
                            tau));
  }
  double z = 0.5 * (-c + std::sqrt(c * c + 4.0));
  if (!(z > lo && z < hi)) z = 0.5 * (lo + hi);
  bool converged = false;
  for (int it = 0; it < kMaxNewton; ++it) {
    const double gz = g(z);
    if (gz == 0.0) {
      converged = true;
      break;
    }
    if ((gz < 0.0) == (glo < 0.0)) {
      lo = z;
    } else {
      hi = z;
    }
    const double slope = dg(z);
    double next = z - gz / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    const double change = std::abs(next - z);
    z = next;
    if (change <= kRootTol * std::max(1.0, std::abs(z))) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    while (hi - lo > kRootTol * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      if ((g(mid) < 0.0) == (glo < 0.0)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    z = 0.5 * (lo + hi);
  }
  return {side, {z}, std::abs(g(z))};
}

double imaginary_axis_gap(const ResponseFunction& f, double c, double y_max, std::size_t n) {
  const double bound = std::abs(f.derivative(1.0, 1));
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double y = -y_max + 2.0 * y_max * static_cast<double>(k) / static_cast<double>(n - 1);
    const std::complex<double> v{-y * y - 1.0, c * y};
    gap = std::min(gap, std::abs(v) - bound);
  }
  return gap;
}

}  // namespace delaywave
