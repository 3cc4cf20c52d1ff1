#include "delaywave/continuation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "delaywave/error.hpp"

namespace delaywave {

BoundCheck check_speed_bounds(double c, const SpeedBounds& bounds, double tol) {
  return {!(c > 0.0) || c <= bounds.c0 + tol, !(c < 0.0) || c >= bounds.c1 - tol,
          std::abs(c) <= bounds.c_star + tol};
}

Sweep continue_in_tau(const ResponseFunction& f, const SweepOptions& options) {
  if (!(options.tau_max >= 0.0) || !(options.dtau > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sweep needs tau_max >= 0 and dtau > 0");
  }
  const auto targets = static_cast<int>(std::ceil(options.tau_max / options.dtau - 1e-9));
  const Grid grid = Grid::symmetric(options.profile.L, options.profile.n);

  ShootingOptions shooting = options.shooting;
  shooting.L = options.profile.L;
  shooting.n = options.profile.n;

  Sweep sweep;
  sweep.bounds = speed_bounds(f, shooting);
  const NondelayedWave start = solve_nondelayed(Reaction::from_response(f), shooting);
  WaveSolution current = solve_profile(f, 0.0, guess_from_shooting(start, grid), options.profile);
  if (!current.monotone) {
    throw Error(ErrorCode::MonotonicityLost, "profile at tau=0 is not strictly decreasing");
  }

  const double min_step = options.dtau / std::pow(2.0, options.max_halvings);
  const auto record = [&](const WaveSolution& s) {
    sweep.bound_checks.push_back(check_speed_bounds(s.c, sweep.bounds));
    sweep.max_weighted_norm = std::max(sweep.max_weighted_norm, s.norm.total);
    sweep.steps.push_back(s);
  };
  record(current);

  for (int k = 1; k <= targets; ++k) {
    const double target = k == targets ? options.tau_max : k * options.dtau;
    double step = target - current.tau;
    while (current.tau < target) {
      const double next_tau = std::min(target, current.tau + step);
      try {
        WaveSolution next = solve_profile(f, next_tau, guess_from_solution(current), options.profile);
        if (!next.monotone) {
          throw Error(ErrorCode::MonotonicityLost,
                      fmt::format("profile lost strict monotonicity at tau={} (last monotone tau={})",
                                  next_tau, current.tau));
        }
        current = std::move(next);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoConvergence && e.code() != ErrorCode::SingularJacobian) throw;
        step *= 0.5;
        ++sweep.halvings;
        if (step < min_step * (1.0 - 1e-12)) {
          throw Error(ErrorCode::ContinuationStalled,
                      fmt::format("continuation stalled after tau={} ({})", current.tau, e.what()));
        }
      }
    }
    record(current);
  }
  return sweep;
}

}  // namespace delaywave
