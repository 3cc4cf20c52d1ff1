#include "delaywave/pde_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "delaywave/error.hpp"

namespace delaywave {

SimState::SimState(DelayedReaction reaction, double tau, const SimOptions& o,
                   const std::function<double(double)>& initial)
    : reaction_(std::move(reaction)),
      tau_(tau),
      dt_(o.dt_target),
      dx_(o.dx),
      x0_(-o.L_sim),
      guard_low_(o.guard_low),
      guard_high_(o.guard_high) {
  if (!(o.L_sim > 0.0) || !(o.dx > 0.0) || !(o.dt_target > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "simulation needs L_sim, dx, dt_target > 0");
  }
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("delay tau={} must be >= 0", tau));
  }
  std::size_t frames = 0;
  if (tau > 0.0) {
    const double r = std::round(tau / o.dt_target);
    if (r < 1.0) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("dt_target={} is too coarse for tau={}", o.dt_target, tau));
    }
    frames = static_cast<std::size_t>(r);
    dt_ = tau / r;
  }
  const auto n = static_cast<std::size_t>(std::llround(2.0 * o.L_sim / o.dx)) + 1;
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "simulation grid needs >= 3 points");
  v_.resize(n);
  for (std::size_t i = 0; i < n; ++i) v_[i] = initial(x(i));
  left_value_ = v_.front();
  right_value_ = v_.back();
  ring_.assign(frames + 1, v_);
  rhs_.resize(n);

  const double r = dt_ / (dx_ * dx_);
  std::vector<double> sub(n, -0.5 * r);
  std::vector<double> diag(n, 1.0 + r);
  std::vector<double> super(n, -0.5 * r);
  sub[0] = super[0] = 0.0;
  diag[0] = 1.0;
  sub[n - 1] = super[n - 1] = 0.0;
  diag[n - 1] = 1.0;
  solver_ = std::make_unique<TridiagonalSolver>(std::move(sub), std::move(diag), std::move(super));
}

SimState SimState::delayed(const ResponseFunction& f, double tau, const SimOptions& options,
                           const std::function<double(double)>& initial) {
  return SimState([f](double v, double vd) { return v * ((1.0 - v) - f.value(vd)); }, tau, options,
                  initial);
}

SimState SimState::nondelayed(const Reaction& F, const SimOptions& options,
                              const std::function<double(double)>& initial) {
  return SimState([F](double v, double) { return F(v); }, 0.0, options, initial);
}

void SimState::step() {
  const std::size_t n = v_.size();
  const std::vector<double>& delayed = ring_[head_];
  const double r = dt_ / (dx_ * dx_);
  rhs_[0] = left_value_;
  rhs_[n - 1] = right_value_;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    rhs_[i] = v_[i] + 0.5 * r * (v_[i - 1] - 2.0 * v_[i] + v_[i + 1]) +
              dt_ * reaction_(v_[i], delayed[i]);
  }
  solver_->solve_in_place(rhs_);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(rhs_[i] >= guard_low_ && rhs_[i] <= guard_high_)) {
      throw Error(ErrorCode::BlowUp, fmt::format("field left [{}, {}] at x={}, t={} (v={})",
                                                 guard_low_, guard_high_, x(i), t_ + dt_, rhs_[i]));
    }
  }
  v_.swap(rhs_);
  ring_[head_] = v_;
  head_ = (head_ + 1) % ring_.size();
  ++steps_;
  t_ = static_cast<double>(steps_) * dt_;
  track_.push_back({t_, front_position()});
}

void SimState::run_until(double t_final) {
  const auto target = static_cast<std::size_t>(std::llround(t_final / dt_));
  while (steps_ < target) step();
}

double SimState::front_position() const {
  for (std::size_t i = 0; i + 1 < v_.size(); ++i) {
    if (v_[i] >= 0.5 && v_[i + 1] < 0.5) {
      return x(i) + (v_[i] - 0.5) / (v_[i] - v_[i + 1]) * dx_;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

SpeedFit measure_speed(const SimState& state, double t_begin, double t_end) {
  const double now = state.time();
  if (t_end < 0.0) t_end = now;
  if (t_begin < 0.0) t_begin = 0.5 * t_end;
  if (t_begin < 0.2 * now) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("speed window starts at t={} inside the initial transient (< {})",
                            t_begin, 0.2 * now));
  }
  std::vector<double> t;
  std::vector<double> x;
  for (const FrontSample& s : state.track()) {
    if (s.t >= t_begin && s.t <= t_end && std::isfinite(s.x_half)) {
      t.push_back(s.t);
      x.push_back(s.x_half);
    }
  }
  if (t.size() < 100) {
    throw Error(ErrorCode::WindowTooShort,
                fmt::format("speed window [{}, {}] holds {} front samples (need 100)", t_begin,
                            t_end, t.size()));
  }
  const LineFit fit = fit_line(t, x);
  return {fit.slope, fit.slope_stderr, t_begin, t_end, fit.points};
}

double recentered_distance(const SimState& state, const WaveSolution& wave) {
  const double shift = state.front_position();
  if (!std::isfinite(shift)) return std::numeric_limits<double>::infinity();
  const auto& v = state.field();
  double worst = 0.0;
  for (std::size_t j = 0; j < wave.grid.n; ++j) {
    const double xs = wave.grid.x(j) + shift;
    const double r = (xs - state.x(0)) / state.dx();
    if (r < 0.0 || r > static_cast<double>(v.size() - 1)) continue;
    const auto i = std::min(static_cast<std::size_t>(r), v.size() - 2);
    const double frac = r - static_cast<double>(i);
    const double vi = v[i] + frac * (v[i + 1] - v[i]);
    worst = std::max(worst, std::abs(vi - wave.w[j]));
  }
  return worst;
}

ComparisonVerdict envelope_comparison_run(const Reaction& F, const WaveSolution& wave,
                                          Direction expect, const ComparisonOptions& options) {
  return envelope_comparison_run(F, wave.grid, wave.w, wave.c, expect, options);
}

ComparisonVerdict envelope_comparison_run(const Reaction& F, const Grid& grid,
                                          std::span<const double> w, double c, Direction expect,
                                          const ComparisonOptions& options) {
  const std::size_t n = grid.n;
  if (w.size() != n || n < 3) throw Error(ErrorCode::InvalidArgument, "profile size mismatch");
  if (!(options.dt > 0.0) || !(options.t_final > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "comparison run needs dt, t_final > 0");
  }
  const double h = grid.h;
  const double dt = options.dt;
  const double diffusion = dt / (h * h);
  const double transport = dt * c / (2.0 * h);
  std::vector<double> sub(n, -(diffusion - transport));
  std::vector<double> diag(n, 1.0 + 2.0 * diffusion);
  std::vector<double> super(n, -(diffusion + transport));
  sub[0] = super[0] = 0.0;
  diag[0] = 1.0;
  sub[n - 1] = super[n - 1] = 0.0;
  diag[n - 1] = 1.0;
  const TridiagonalSolver solver(std::move(sub), std::move(diag), std::move(super));

  std::vector<double> u(w.begin(), w.end());
  u.front() = 1.0;
  u.back() = 0.0;
  std::vector<double> next(n);
  const auto steps = static_cast<std::size_t>(std::llround(options.t_final / dt));
  ComparisonVerdict verdict{true, 0.0, steps};
  double worst = expect == Direction::Nondecreasing ? std::numeric_limits<double>::infinity()
                                                    : -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < steps; ++s) {
    next[0] = 1.0;
    next[n - 1] = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) next[i] = u[i] + dt * F(u[i]);
    solver.solve_in_place(next);
    for (std::size_t i = 0; i < n; ++i) {
      const double change = next[i] - u[i];
      if (!std::isfinite(next[i]) || next[i] < -0.05 || next[i] > 1.05) {
        throw Error(ErrorCode::BlowUp, fmt::format("comparison run left the guard band at x={}",
                                                   grid.x(i)));
      }
      worst = expect == Direction::Nondecreasing ? std::min(worst, change) : std::max(worst, change);
    }
    u.swap(next);
  }
  verdict.worst = worst;
  verdict.holds = expect == Direction::Nondecreasing ? worst >= -options.tolerance
                                                     : worst <= options.tolerance;
  return verdict;
}

}  // namespace delaywave
