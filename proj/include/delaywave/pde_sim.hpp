#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "delaywave/nonlinearity.hpp"
#include "delaywave/profile.hpp"
#include "delaywave/scalar_wave.hpp"

namespace delaywave {

struct SimOptions {
  double L_sim = 150.0;
  double dx = 0.05;
  double dt_target = 0.01;
  double guard_low = -0.05;
  double guard_high = 1.05;
};

struct FrontSample {
  double t;
  double x_half;
};

/// Method-of-lines state for v_t = v_xx + G(v, v(t - tau)) on [-L_sim, L_sim]
/// with Dirichlet ends held at the initial end values. Crank-Nicolson
/// diffusion, explicit reaction read from a ring of past frames (dt divides
/// tau exactly, so no interpolation in time is needed).
class SimState {
 public:
  using DelayedReaction = std::function<double(double v, double v_delayed)>;

  /// v (1 - v - f(v_tau)).
  static SimState delayed(const ResponseFunction& f, double tau, const SimOptions& options,
                          const std::function<double(double)>& initial);
  /// v_t = v_xx + F(v), no delay.
  static SimState nondelayed(const Reaction& F, const SimOptions& options,
                             const std::function<double(double)>& initial);

  double time() const noexcept { return t_; }
  double dt() const noexcept { return dt_; }
  double tau() const noexcept { return tau_; }
  std::size_t size() const noexcept { return v_.size(); }
  double x(std::size_t i) const noexcept { return x0_ + static_cast<double>(i) * dx_; }
  double dx() const noexcept { return dx_; }
  const std::vector<double>& field() const noexcept { return v_; }
  std::size_t ring_length() const noexcept { return ring_.size(); }
  const std::vector<FrontSample>& track() const noexcept { return track_; }
  std::size_t steps() const noexcept { return steps_; }

  /// Advances by dt. Throws Error(BlowUp) if the field leaves the guard band.
  void step();
  void run_until(double t_final);

  /// Level-set position where v crosses 1/2 (linear interpolation); NaN if none.
  double front_position() const;

 private:
  SimState(DelayedReaction reaction, double tau, const SimOptions& options,
           const std::function<double(double)>& initial);

  DelayedReaction reaction_;
  double tau_;
  double dt_;
  double dx_;
  double x0_;
  double guard_low_;
  double guard_high_;
  double t_ = 0.0;
  std::size_t steps_ = 0;
  std::vector<double> v_;
  std::vector<std::vector<double>> ring_;  // ring_[head_] is v(t - tau)
  std::size_t head_ = 0;
  std::vector<FrontSample> track_;
  double left_value_;
  double right_value_;
  std::vector<double> rhs_;
  std::unique_ptr<TridiagonalSolver> solver_;
};

struct SpeedFit {
  double c_sim;
  double stderr_c;
  double t_begin;
  double t_end;
  std::size_t points;
};

/// Least-squares slope of the front track over [t_begin, t_end]; by default the
/// second half of the run. Throws Error(WindowTooShort) below 100 samples and
/// Error(InvalidArgument) if the window reaches into the first 20% of the run.
SpeedFit measure_speed(const SimState& state, double t_begin = -1.0, double t_end = -1.0);

/// sup over the profile grid of |v(x + x_half) - w(x)|, where x_half is the
/// current level-set position (points outside the simulation domain skipped).
double recentered_distance(const SimState& state, const WaveSolution& wave);

enum class Direction { Nondecreasing, Nonincreasing };

struct ComparisonVerdict {
  bool holds;
  double worst;      ///< most adverse per-step change (negative for a violation when nondecreasing)
  std::size_t steps;
};

struct ComparisonOptions {
  double dt = 0.01;
  double t_final = 20.0;
  double tolerance = 1e-6;
};

/// Runs u_t = u_xx + c u_x + F(u) in the frame moving with the wave's speed,
/// from the wave's profile, on its grid (Dirichlet 1 / 0). Diffusion and
/// transport are implicit (backward Euler, a monotone scheme), the reaction
/// explicit. The verdict holds if every step changes u by no less than
/// -tolerance (Nondecreasing) or no more than +tolerance (Nonincreasing).
ComparisonVerdict envelope_comparison_run(const Reaction& F, const WaveSolution& wave,
                                          Direction expect,
                                          const ComparisonOptions& options = {});
/// Same, from raw nodal values w on `grid` and frame speed c.
ComparisonVerdict envelope_comparison_run(const Reaction& F, const Grid& grid,
                                          std::span<const double> w, double c, Direction expect,
                                          const ComparisonOptions& options = {});

}  // namespace delaywave
