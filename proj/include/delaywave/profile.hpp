#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "delaywave/banded.hpp"
#include "delaywave/cutoff.hpp"
#include "delaywave/nonlinearity.hpp"
#include "delaywave/norms.hpp"
#include "delaywave/scalar_wave.hpp"

namespace delaywave {

/// Pinned: unknowns (u, c) closed by w(0) = 1/2.
/// Operator: unknown u only, with c = c(u) from the speed functional.
enum class ProfileMode { Pinned, Operator };

std::string_view mode_name(ProfileMode mode) noexcept;

struct ProfileOptions {
  double L = 60.0;
  std::size_t n = 2401;
  double newton_tol = 1e-10;
  int max_iter = 40;
  double min_damping = 1.0 / 1024.0;
  ProfileMode mode = ProfileMode::Pinned;
  double alpha = 0.5;  ///< Holder exponent of the weighted norm
};

class ProfileJacobian;

/// Discretized profile operator
///   R_i = w'' + c w' + w (1 - w - f(w(x_i + c tau)))
/// on a uniform grid, with w = u + psi, fourth-order central differences,
/// w = 1 to the left and w = 0 to the right of the grid, and Dirichlet rows
/// w_0 = 1, w_{n-1} = 0. The shifted value is a cubic Lagrange interpolant of
/// the nodal values (constant extension beyond the grid).
class ProfileProblem {
 public:
  ProfileProblem(const ResponseFunction& f, double tau, const Grid& grid, ProfileMode mode);

  const Grid& grid() const noexcept { return grid_; }
  double tau() const noexcept { return tau_; }
  ProfileMode mode() const noexcept { return mode_; }
  const ResponseFunction& response() const noexcept { return f_; }
  std::size_t pin_index() const noexcept { return pin_; }
  const SpeedFunctional& speed_functional() const noexcept { return speed_; }

  /// R(u, c), size n.
  std::vector<double> residual(std::span<const double> u, double c) const;
  /// R(u, c(u)), size n.
  std::vector<double> operator_residual(std::span<const double> u) const;
  /// c(u).
  double speed(std::span<const double> u) const;

  /// Residual of the Newton system: pinned (R(u, c), w_m - 1/2), size n + 1;
  /// operator R(u, c(u)), size n (the c argument is ignored).
  std::vector<double> system_residual(std::span<const double> u, double c) const;

  ProfileJacobian linearize(std::span<const double> u, double c) const;

  /// w_i and 1 - w_i computed without cancellation.
  std::vector<double> profile(std::span<const double> u) const;
  std::vector<double> complement(std::span<const double> u) const;

 private:
  friend class ProfileJacobian;

  ResponseFunction f_;
  double tau_;
  Grid grid_;
  ProfileMode mode_;
  std::size_t pin_;
  std::vector<double> psi_;
  std::vector<double> psi_complement_;  // 1 - psi
  SpeedFunctional speed_;
};

/// Linearization of the profile system.
///
/// A = dR/du (banded: five-point stencil plus the four-point shift band),
/// b = dR/dc. Pinned mode solves the bordered system [A b; e_m^T 0];
/// operator mode solves A + b g^T with g = grad c(u). Both factor the same
/// well-conditioned band matrix A_hat (A with row m replaced by e_m^T); the
/// low-rank remainder is handled by a bordering / Woodbury formula.
class ProfileJacobian {
 public:
  ProfileJacobian(const ProfileProblem& problem, std::span<const double> u, double c);

  /// J v for v = (du, dc) (pinned) or du (operator).
  std::vector<double> apply(std::span<const double> v) const;
  /// Solves J v = rhs. Throws Error(SingularJacobian).
  std::vector<double> solve(std::span<const double> rhs) const;

  const BandMatrix& band() const noexcept { return a_; }
  std::span<const double> c_column() const noexcept { return b_; }
  std::span<const double> speed_gradient() const noexcept { return g_; }

 private:
  ProfileMode mode_;
  std::size_t n_;
  std::size_t pin_;
  BandMatrix a_;
  std::vector<double> b_;
  std::vector<double> g_;                                   // operator mode only
  std::vector<std::pair<std::size_t, double>> pin_row_;     // row m of A
  std::optional<BandLU> lu_;
};

struct DecayRates {
  double gamma_plus_fit = 0.0;   ///< w ~ e^{-gamma_plus x} as x -> +inf
  double gamma_minus_fit = 0.0;  ///< 1 - w ~ e^{gamma_minus x} as x -> -inf
  double gamma_plus_pred = 0.0;
  double gamma_minus_pred = 0.0;
  std::size_t plus_points = 0;
  std::size_t minus_points = 0;
};

struct WaveSolution {
  ResponseFunction f = ResponseFunction::polynomial(0.0, 0.0, 0.0);
  double tau = 0.0;
  double c = 0.0;
  ProfileMode mode = ProfileMode::Pinned;
  Grid grid;
  std::vector<double> u;
  std::vector<double> w;
  std::vector<double> dw;
  int iterations = 0;
  double residual = 0.0;
  bool monotone = false;
  bool interior_in_range = false;
  std::optional<DecayRates> decay;  ///< empty if a tail window was too short
  WeightedNorm norm;

  /// 1 - w without cancellation.
  std::vector<double> complement() const;
};

struct ProfileGuess {
  Grid grid;
  std::vector<double> u;
  double c = 0.0;
};

/// Samples a shooting profile onto `grid` (u = w - psi, exact where w ~ 1).
ProfileGuess guess_from_shooting(const NondelayedWave& wave, const Grid& grid);
ProfileGuess guess_from_solution(const WaveSolution& solution);

/// Damped Newton on the profile system. Throws Error(NoConvergence),
/// Error(SingularJacobian) or Error(ResidualNaN). A converged but non-monotone
/// profile is returned with monotone = false.
WaveSolution solve_profile(const ResponseFunction& f, double tau, const ProfileGuess& init,
                           const ProfileOptions& options = {});

/// Least-squares tail rates of ln w over w in (1e-8, 1e-3) and of ln(1 - w)
/// over 1 - w in (1e-8, 1e-3), next to the characteristic-root predictions.
/// Throws Error(TailTooShort) if a window holds fewer than 20 points.
DecayRates decay_rates(const WaveSolution& solution);

/// Translates a converged pinned solution (same nodal values on a grid
/// shifted by delta) so that c(u) equals its speed. The returned solution is
/// tagged Operator and carries the operator-mode residual.
WaveSolution recenter_to_functional(const WaveSolution& pinned, double* delta = nullptr);

}  // namespace delaywave
