#include "delaywave/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "delaywave/error.hpp"
#include "delaywave/spectrum.hpp"

namespace delaywave {
namespace {

constexpr std::array<double, 5> kD2 = {-1.0, 16.0, -30.0, 16.0, -1.0};  // / 12 h^2
constexpr std::array<double, 5> kD1 = {1.0, -8.0, 0.0, 8.0, -1.0};      // / 12 h

// Cubic Lagrange weights at nodes k-1..k+2 for the point (k + theta) h.
struct Shift {
  std::ptrdiff_t k;
  std::array<double, 4> l;
  std::array<double, 4> dl;  // d l / d s
};

Shift make_shift(double s, double h) {
  const double r = s / h;
  const double fl = std::floor(r);
  const double t = r - fl;
  Shift sh{static_cast<std::ptrdiff_t>(fl), {}, {}};
  sh.l = {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
          -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
  sh.dl = {-(3.0 * t * t - 6.0 * t + 2.0) / (6.0 * h), (3.0 * t * t - 4.0 * t - 1.0) / (2.0 * h),
           -(3.0 * t * t - 2.0 * t - 2.0) / (2.0 * h), (3.0 * t * t - 1.0) / (6.0 * h)};
  return sh;
}

double sup_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
    m = std::max(m, std::abs(x));
  }
  return m;
}

// Nodal values with the constant extension: w = 1 (q = 0) to the left, w = 0 (q = 1) to the right.
struct Extended {
  std::span<const double> w;
  std::span<const double> q;
  std::ptrdiff_t n;
  double W(std::ptrdiff_t i) const {
    return i < 0 ? 1.0 : (i >= n ? 0.0 : w[static_cast<std::size_t>(i)]);
  }
  double Q(std::ptrdiff_t i) const {
    return i < 0 ? 0.0 : (i >= n ? 1.0 : q[static_cast<std::size_t>(i)]);
  }
  // Derivatives of w. Near w = 1 they are taken from q to keep the tail exact.
  double d2(std::ptrdiff_t i, double h) const {
    double s = 0.0;
    if (w[static_cast<std::size_t>(i)] >= 0.5) {
      for (int o = -2; o <= 2; ++o) s -= kD2[static_cast<std::size_t>(o + 2)] * Q(i + o);
    } else {
      for (int o = -2; o <= 2; ++o) s += kD2[static_cast<std::size_t>(o + 2)] * W(i + o);
    }
    return s / (12.0 * h * h);
  }
  double d1(std::ptrdiff_t i, double h) const {
    double s = 0.0;
    if (w[static_cast<std::size_t>(i)] >= 0.5) {
      for (int o = -2; o <= 2; ++o) s -= kD1[static_cast<std::size_t>(o + 2)] * Q(i + o);
    } else {
      for (int o = -2; o <= 2; ++o) s += kD1[static_cast<std::size_t>(o + 2)] * W(i + o);
    }
    return s / (12.0 * h);
  }
  // Complement of the shifted value, 1 - w(x_i + s).
  double shifted_q(std::ptrdiff_t i, const Shift& sh) const {
    double s = 0.0;
    for (std::ptrdiff_t k = 0; k < 4; ++k) s += sh.l[static_cast<std::size_t>(k)] * Q(i + sh.k + k - 1);
    return s;
  }
  double shifted_slope(std::ptrdiff_t i, const Shift& sh) const {
    double s = 0.0;
    for (std::ptrdiff_t k = 0; k < 4; ++k) s -= sh.dl[static_cast<std::size_t>(k)] * Q(i + sh.k + k - 1);
    return s;
  }
};

std::vector<double> offset_from_profile(std::span<const double> w, std::span<const double> q,
                                        const Grid& grid) {
  std::vector<double> u(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    u[i] = w[i] < 0.5 ? w[i] - cutoff(x) : cutoff_complement(x) - q[i];
  }
  return u;
}

bool strictly_decreasing(std::span<const double> u, const Grid& grid) {
  for (std::size_t i = 0; i + 1 < grid.n; ++i) {
    const double dpsi = cutoff(grid.x(i + 1)) - cutoff(grid.x(i));
    if (!((u[i + 1] - u[i]) + dpsi < 0.0)) return false;
  }
  return true;
}

void finalize(WaveSolution& s, double alpha) {
  const ProfileProblem problem(s.f, s.tau, s.grid, s.mode);
  s.w = problem.profile(s.u);
  const auto q = problem.complement(s.u);
  s.dw = first_difference(s.w, s.grid.h, 1.0, 0.0);
  s.monotone = strictly_decreasing(s.u, s.grid);
  s.interior_in_range = true;
  for (std::size_t i = 1; i + 1 < s.grid.n; ++i) {
    if (!(s.w[i] > 0.0 && q[i] > 0.0)) s.interior_in_range = false;
  }
  s.norm = weighted_norm(s.u, s.grid, alpha);
  try {
    s.decay = decay_rates(s);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TailTooShort && e.code() != ErrorCode::RootNotFound) throw;
    s.decay.reset();
  }
}

}  // namespace

std::string_view mode_name(ProfileMode mode) noexcept {
  return mode == ProfileMode::Pinned ? "pinned" : "operator";
}

ProfileProblem::ProfileProblem(const ResponseFunction& f, double tau, const Grid& grid,
                               ProfileMode mode)
    : f_(f), tau_(tau), grid_(grid), mode_(mode), pin_(grid.center()), speed_(grid) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("delay tau={} must be >= 0", tau));
  }
  if (grid.n < 8) throw Error(ErrorCode::InvalidArgument, "profile grid needs >= 8 nodes");
  psi_.resize(grid.n);
  psi_complement_.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    psi_[i] = cutoff(grid.x(i));
    psi_complement_[i] = cutoff_complement(grid.x(i));
  }
}

std::vector<double> ProfileProblem::profile(std::span<const double> u) const {
  if (u.size() != grid_.n) throw Error(ErrorCode::InvalidArgument, "profile size mismatch");
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = psi_[i] + u[i];
  return w;
}

std::vector<double> ProfileProblem::complement(std::span<const double> u) const {
  if (u.size() != grid_.n) throw Error(ErrorCode::InvalidArgument, "profile size mismatch");
  std::vector<double> q(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) q[i] = psi_complement_[i] - u[i];
  return q;
}

double ProfileProblem::speed(std::span<const double> u) const {
  return speed_.speed_of_profile(profile(u));
}

std::vector<double> ProfileProblem::residual(std::span<const double> u, double c) const {
  const auto w = profile(u);
  const auto q = complement(u);
  const auto n = static_cast<std::ptrdiff_t>(grid_.n);
  const Extended e{w, q, n};
  const Shift sh = make_shift(c * tau_, grid_.h);
  std::vector<double> r(grid_.n);
  r[0] = -q[0];
  r[grid_.n - 1] = w[grid_.n - 1];
  for (std::ptrdiff_t i = 1; i + 1 < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const double fs = f_.value_at_complement(e.shifted_q(i, sh));
    r[iu] = e.d2(i, grid_.h) + c * e.d1(i, grid_.h) + w[iu] * (q[iu] - fs);
    if (std::isnan(r[iu])) {
      throw Error(ErrorCode::ResidualNaN, fmt::format("NaN residual at x={}", grid_.x(iu)));
    }
  }
  return r;
}

std::vector<double> ProfileProblem::operator_residual(std::span<const double> u) const {
  return residual(u, speed(u));
}

std::vector<double> ProfileProblem::system_residual(std::span<const double> u, double c) const {
  if (mode_ == ProfileMode::Operator) return operator_residual(u);
  auto r = residual(u, c);
  r.push_back(psi_[pin_] + u[pin_] - 0.5);
  return r;
}

ProfileJacobian ProfileProblem::linearize(std::span<const double> u, double c) const {
  return ProfileJacobian(*this, u, c);
}

namespace {

std::size_t lower_band(const Shift& sh) {
  return static_cast<std::size_t>(std::max<std::ptrdiff_t>(2, 1 - sh.k));
}
std::size_t upper_band(const Shift& sh) {
  return static_cast<std::size_t>(std::max<std::ptrdiff_t>(2, sh.k + 2));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

ProfileJacobian::ProfileJacobian(const ProfileProblem& problem, std::span<const double> u,
                                 double c)
    : mode_(problem.mode_),
      n_(problem.grid_.n),
      pin_(problem.pin_),
      a_(problem.grid_.n, lower_band(make_shift(c * problem.tau_, problem.grid_.h)),
         upper_band(make_shift(c * problem.tau_, problem.grid_.h))),
      b_(problem.grid_.n, 0.0) {
  const Grid& grid = problem.grid_;
  const double h = grid.h;
  const double tau = problem.tau_;
  const ResponseFunction& f = problem.f_;
  if (mode_ == ProfileMode::Operator) c = problem.speed(u);
  const auto w = problem.profile(u);
  const auto q = problem.complement(u);
  const auto n = static_cast<std::ptrdiff_t>(n_);
  const Extended e{w, q, n};
  const Shift sh = make_shift(c * tau, h);

  a_.set(0, 0, 1.0);
  a_.set(n_ - 1, n_ - 1, 1.0);
  for (std::ptrdiff_t i = 1; i + 1 < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    for (std::ptrdiff_t o = -2; o <= 2; ++o) {
      const std::ptrdiff_t j = i + o;
      if (j < 0 || j >= n) continue;
      const auto oi = static_cast<std::size_t>(o + 2);
      a_.add(iu, static_cast<std::size_t>(j), kD2[oi] / (12.0 * h * h) + c * kD1[oi] / (12.0 * h));
    }
    const double qs = e.shifted_q(i, sh);
    const double fs = f.value_at_complement(qs);
    const double fps = f.slope_at_complement(qs);
    a_.add(iu, iu, q[iu] - fs - w[iu]);
    const double coupling = -w[iu] * fps;
    for (std::ptrdiff_t k = 0; k < 4; ++k) {
      const std::ptrdiff_t j = i + sh.k + k - 1;
      if (j < 0 || j >= n) continue;
      a_.add(iu, static_cast<std::size_t>(j), coupling * sh.l[static_cast<std::size_t>(k)]);
    }
    b_[iu] = e.d1(i, h) + coupling * tau * e.shifted_slope(i, sh);
  }

  if (mode_ == ProfileMode::Operator) g_ = problem.speed_.gradient_of_profile(w);

  const std::size_t kl = a_.lower_bandwidth();
  const std::size_t ku = a_.upper_bandwidth();
  const std::size_t j0 = pin_ > kl ? pin_ - kl : 0;
  const std::size_t j1 = std::min(n_ - 1, pin_ + ku);
  BandMatrix hat = a_;
  for (std::size_t j = j0; j <= j1; ++j) {
    const double v = a_.get(pin_, j);
    if (v != 0.0) pin_row_.emplace_back(j, v);
  }
  hat.clear_row(pin_);
  hat.set(pin_, pin_, 1.0);
  lu_.emplace(std::move(hat));
}

std::vector<double> ProfileJacobian::apply(std::span<const double> v) const {
  const std::size_t expected = mode_ == ProfileMode::Pinned ? n_ + 1 : n_;
  if (v.size() != expected) throw Error(ErrorCode::InvalidArgument, "jacobian apply: size mismatch");
  const auto du = v.first(n_);
  auto out = a_.multiply(du);
  const double dc = mode_ == ProfileMode::Pinned ? v[n_] : dot(g_, du);
  for (std::size_t i = 0; i < n_; ++i) out[i] += b_[i] * dc;
  if (mode_ == ProfileMode::Pinned) out.push_back(du[pin_]);
  return out;
}

std::vector<double> ProfileJacobian::solve(std::span<const double> rhs) const {
  const auto pin_dot = [&](std::span<const double> x) {
    double s = 0.0;
    for (const auto& [j, v] : pin_row_) s += v * x[j];
    return s;
  };
  if (mode_ == ProfileMode::Pinned) {
    if (rhs.size() != n_ + 1) throw Error(ErrorCode::InvalidArgument, "jacobian solve: size mismatch");
    std::vector<double> y(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(n_));
    y[pin_] = rhs[n_];
    lu_->solve_in_place(y);
    std::vector<double> z = b_;
    z[pin_] = 0.0;
    lu_->solve_in_place(z);
    const double denom = b_[pin_] - pin_dot(z);
    if (denom == 0.0 || !std::isfinite(denom)) {
      throw Error(ErrorCode::SingularJacobian, "bordered pivot vanished");
    }
    const double dc = (rhs[pin_] - pin_dot(y)) / denom;
    for (std::size_t i = 0; i < n_; ++i) y[i] -= z[i] * dc;
    y.push_back(dc);
    return y;
  }

  if (rhs.size() != n_) throw Error(ErrorCode::InvalidArgument, "jacobian solve: size mismatch");
  // J = A_hat + U V^T, U = [e_m, b], V = [a_m - e_m, g].
  std::vector<double> y(rhs.begin(), rhs.end());
  lu_->solve_in_place(y);
  std::vector<double> z1(n_, 0.0);
  z1[pin_] = 1.0;
  lu_->solve_in_place(z1);
  std::vector<double> z2 = b_;
  lu_->solve_in_place(z2);
  const auto v1 = [&](std::span<const double> x) { return pin_dot(x) - x[pin_]; };
  const auto v2 = [&](std::span<const double> x) { return dot(g_, x); };
  const double m11 = 1.0 + v1(z1);
  const double m12 = v1(z2);
  const double m21 = v2(z1);
  const double m22 = 1.0 + v2(z2);
  const double det = m11 * m22 - m12 * m21;
  if (det == 0.0 || !std::isfinite(det)) {
    throw Error(ErrorCode::SingularJacobian, "capacitance matrix is singular");
  }
  const double r1 = v1(y);
  const double r2 = v2(y);
  const double k1 = (m22 * r1 - m12 * r2) / det;
  const double k2 = (m11 * r2 - m21 * r1) / det;
  for (std::size_t i = 0; i < n_; ++i) y[i] -= z1[i] * k1 + z2[i] * k2;
  return y;
}

std::vector<double> WaveSolution::complement() const {
  std::vector<double> q(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) q[i] = cutoff_complement(grid.x(i)) - u[i];
  return q;
}

ProfileGuess guess_from_shooting(const NondelayedWave& wave, const Grid& grid) {
  ProfileGuess g{grid, std::vector<double>(grid.n), wave.c};
  std::vector<double> w(grid.n);
  std::vector<double> q(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const ProfilePoint p = wave.at(grid.x(i));
    w[i] = p.w;
    q[i] = p.q;
  }
  g.u = offset_from_profile(w, q, grid);
  return g;
}

ProfileGuess guess_from_solution(const WaveSolution& solution) {
  return ProfileGuess{solution.grid, solution.u, solution.c};
}

WaveSolution solve_profile(const ResponseFunction& f, double tau, const ProfileGuess& init,
                           const ProfileOptions& options) {
  if (init.u.size() != init.grid.n) {
    throw Error(ErrorCode::InvalidArgument, "initial guess does not match its grid");
  }
  const ProfileProblem problem(f, tau, init.grid, options.mode);
  const bool pinned = options.mode == ProfileMode::Pinned;
  std::vector<double> u = init.u;
  double c = pinned ? init.c : problem.speed(u);
  auto r = problem.system_residual(u, c);
  double norm = sup_abs(r);
  if (std::isnan(norm)) throw Error(ErrorCode::ResidualNaN, "initial residual is NaN");

  int iterations = 0;
  while (!(norm <= options.newton_tol)) {
    if (iterations >= options.max_iter) {
      throw Error(ErrorCode::NoConvergence,
                  fmt::format("no convergence after {} Newton steps (residual {:.3e}, tau={})",
                              iterations, norm, tau));
    }
    const ProfileJacobian jac = problem.linearize(u, c);
    for (double& v : r) v = -v;
    const auto d = jac.solve(r);

    double lambda = 1.0;
    while (true) {
      std::vector<double> trial(u);
      for (std::size_t i = 0; i < u.size(); ++i) trial[i] += lambda * d[i];
      const double c_trial = pinned ? c + lambda * d[u.size()] : 0.0;
      double trial_norm = std::numeric_limits<double>::infinity();
      std::vector<double> trial_r;
      try {
        trial_r = problem.system_residual(trial, c_trial);
        trial_norm = sup_abs(trial_r);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ResidualNaN && e.code() != ErrorCode::NonpositiveRho) throw;
      }
      if (trial_norm < norm) {
        u = std::move(trial);
        c = pinned ? c_trial : problem.speed(u);
        r = std::move(trial_r);
        norm = trial_norm;
        break;
      }
      lambda *= 0.5;
      if (lambda < options.min_damping) {
        throw Error(ErrorCode::NoConvergence,
                    fmt::format("damping fell below {} at Newton step {} (residual {:.3e}, tau={})",
                                options.min_damping, iterations + 1, norm, tau));
      }
    }
    ++iterations;
  }

  WaveSolution s;
  s.f = f;
  s.tau = tau;
  s.c = c;
  s.mode = options.mode;
  s.grid = init.grid;
  s.u = std::move(u);
  s.iterations = iterations;
  s.residual = norm;
  finalize(s, options.alpha);
  return s;
}

DecayRates decay_rates(const WaveSolution& s) {
  constexpr double kLo = 1e-8;
  constexpr double kHi = 1e-3;
  constexpr std::size_t kMinPoints = 20;
  const auto q = s.complement();
  std::vector<double> xp, yp, xm, ym;
  for (std::size_t i = 0; i < s.grid.n; ++i) {
    if (s.w[i] > kLo && s.w[i] < kHi) {
      xp.push_back(s.grid.x(i));
      yp.push_back(std::log(s.w[i]));
    }
    if (q[i] > kLo && q[i] < kHi) {
      xm.push_back(s.grid.x(i));
      ym.push_back(std::log(q[i]));
    }
  }
  if (xp.size() < kMinPoints || xm.size() < kMinPoints) {
    throw Error(ErrorCode::TailTooShort,
                fmt::format("tail windows hold {} / {} points (need {}); increase L", xp.size(),
                            xm.size(), kMinPoints));
  }
  DecayRates d;
  d.gamma_plus_fit = -fit_line(xp, yp).slope;
  d.gamma_minus_fit = fit_line(xm, ym).slope;
  d.plus_points = xp.size();
  d.minus_points = xm.size();
  d.gamma_plus_pred = characteristic_roots(s.f, s.c, s.tau, TailSide::Plus).decay_rate();
  d.gamma_minus_pred = characteristic_roots(s.f, s.c, s.tau, TailSide::Minus).decay_rate();
  return d;
}

WaveSolution recenter_to_functional(const WaveSolution& pinned, double* delta_out) {
  const std::vector<double>& w = pinned.w;
  const auto q = pinned.complement();
  const auto mismatch = [&](double delta) {
    return SpeedFunctional(pinned.grid.shifted(delta)).speed_of_profile(w) - pinned.c;
  };
  double lo = -1.0;
  double hi = 1.0;
  double flo = mismatch(lo);
  double fhi = mismatch(hi);
  const double limit = 0.5 * (pinned.grid.right() - pinned.grid.x0);
  while (flo > 0.0 && lo > -limit) {
    hi = lo;
    fhi = flo;
    lo *= 2.0;
    flo = mismatch(lo);
  }
  while (fhi < 0.0 && hi < limit) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = mismatch(hi);
  }
  if (!(flo <= 0.0 && fhi >= 0.0)) {
    throw Error(ErrorCode::NoBracket, "no grid shift reproduces the pinned speed");
  }
  double delta = lo;
  if (flo == 0.0) {
    delta = lo;
  } else if (fhi == 0.0) {
    delta = hi;
  } else {
    boost::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        mismatch, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
    delta = std::abs(mismatch(a)) <= std::abs(mismatch(b)) ? a : b;
  }
  if (delta_out) *delta_out = delta;

  WaveSolution s = pinned;
  s.grid = pinned.grid.shifted(delta);
  s.u = offset_from_profile(w, q, s.grid);
  s.mode = ProfileMode::Operator;
  const ProfileProblem problem(s.f, s.tau, s.grid, ProfileMode::Operator);
  s.c = problem.speed(s.u);
  s.residual = sup_abs(problem.operator_residual(s.u));
  s.iterations = 0;
  finalize(s, 0.5);
  return s;
}

}  // namespace delaywave
