#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace delaywave {

struct CutoffValues {
  double psi;
  double dpsi;
  double d2psi;
  double mu;
  double dmu;
  double d2mu;
};

/// Quintic smoothstep cutoff psi (1 for x <= 0, 0 for x >= 1) and the
/// weight mu(x) = 1 + x^2, each with two derivatives.
CutoffValues cutoff_and_weight(double x) noexcept;

/// psi(x) alone.
double cutoff(double x) noexcept;
/// 1 - psi(x), exact near x = 0.
double cutoff_complement(double x) noexcept;

/// Uniform grid x_i = x0 + i h, i = 0..n-1.
struct Grid {
  double x0 = -60.0;
  double h = 0.05;
  std::size_t n = 2401;

  /// Symmetric grid on [-L, L]; n must be odd so that x = 0 is a node.
  static Grid symmetric(double L, std::size_t n);

  double x(std::size_t i) const noexcept { return x0 + static_cast<double>(i) * h; }
  double right() const noexcept { return x(n - 1); }
  Grid shifted(double delta) const noexcept { return Grid{x0 + delta, h, n}; }
  /// Index of the node at x = 0, if there is one (to rounding).
  std::optional<std::size_t> zero_node() const noexcept;
  /// Node closest to x = 0.
  std::size_t center() const noexcept;
};

/// Discretization of c(u) = 1/2 ln rho, rho = int w(s)^2 min(e^s, 1) ds with w = u + psi.
///
/// rho is computed as sum_i q_i w_i^2 with product-integration weights: on
/// each cell the integrand factor w^2 is replaced by its cubic Lagrange
/// interpolant and integrated exactly against min(e^s, 1). Stencils never
/// straddle s = 0 when it is a node, so a kink of w there costs nothing.
/// The left tail contributes e^{x0} w_0^2; the right tail is dropped.
class SpeedFunctional {
 public:
  explicit SpeedFunctional(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Throws Error(NonpositiveRho) if rho is not positive and finite.
  double rho_of_profile(std::span<const double> w) const;
  double speed_of_profile(std::span<const double> w) const;
  /// dc/dw_i = q_i w_i / rho.
  std::vector<double> gradient_of_profile(std::span<const double> w) const;

 private:
  Grid grid_;
  std::vector<double> weights_;
};

/// w_i = u_i + psi(x_i) on the grid.
std::vector<double> profile_from_offset(std::span<const double> u, const Grid& grid);

double c_functional(std::span<const double> u, const Grid& grid);
/// c'(u) h = (1/rho) int (u + psi) h min(e^s, 1) ds.
double c_functional_gradient(std::span<const double> u, std::span<const double> h,
                             const Grid& grid);

}  // namespace delaywave
