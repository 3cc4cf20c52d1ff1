#pragma once

#include <vector>

#include "delaywave/profile.hpp"
#include "delaywave/scalar_wave.hpp"

namespace delaywave {

struct SweepOptions {
  double tau_max = 2.0;
  double dtau = 0.1;
  int max_halvings = 4;  ///< smallest step is dtau / 2^max_halvings
  ProfileOptions profile;
  ShootingOptions shooting;
};

struct BoundCheck {
  bool upper_ok;   ///< c > 0 implies c <= c0 + tol
  bool lower_ok;   ///< c < 0 implies c >= c1 - tol
  bool star_ok;    ///< |c| <= c_star + tol
  bool all() const noexcept { return upper_ok && lower_ok && star_ok; }
};

BoundCheck check_speed_bounds(double c, const SpeedBounds& bounds, double tol = 1e-3);

struct Sweep {
  std::vector<WaveSolution> steps;  ///< one per tau = 0, dtau, ..., tau_max
  SpeedBounds bounds{};
  std::vector<BoundCheck> bound_checks;
  double max_weighted_norm = 0.0;
  int halvings = 0;  ///< total step halvings used
};

/// Natural continuation in tau from the tau = 0 shooting profile. Each step
/// starts from the previous solution; on failure the step is halved down to
/// dtau / 2^max_halvings. Throws Error(ContinuationStalled) with the last good
/// tau, or Error(MonotonicityLost) if a converged step is not monotone.
Sweep continue_in_tau(const ResponseFunction& f, const SweepOptions& options = {});

}  // namespace delaywave
