#include "delaywave/scalar_wave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "delaywave/error.hpp"

namespace delaywave {

using State = std::array<double, 2>;

namespace detail {

// One integrated trajectory. Both branch systems have the form
//   y0' = -y1,  y1' = G(y),
// so the first component can be interpolated by a quintic Hermite using
// y0' = -y1 and y0'' = -y1'; the profile slope is minus the derivative of y0.
struct Branch {
  std::vector<double> t;
  std::vector<State> y;
  std::vector<double> accel;  // y1'
};

struct ShootingBranches {
  double c = 0.0;
  double eps = 0.0;
  double lambda = 0.0;   // unstable rate at w = 1
  double mu = 0.0;       // stable rate at w = 0 (negative)
  Branch forward;        // (q, p) with q = 1 - w, in x
  double t_cross = 0.0;
  Branch backward;       // (w, p), in s = -x
  double s_cross = 0.0;
  double p_forward = 0.0;
  double p_backward = 0.0;
};

}  // namespace detail

namespace {

using detail::Branch;
using detail::ShootingBranches;

struct HermiteValue {
  double value;
  double slope;
};

HermiteValue hermite(const Branch& b, std::size_t i, double t) {
  const double h = b.t[i + 1] - b.t[i];
  const double s = (t - b.t[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double s4 = s3 * s;
  const double s5 = s4 * s;
  const double y0 = b.y[i][0];
  const double y1 = b.y[i + 1][0];
  const double d0 = -b.y[i][1];
  const double d1 = -b.y[i + 1][1];
  const double a0 = -b.accel[i];
  const double a1 = -b.accel[i + 1];

  const double h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
  const double h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
  const double h2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
  const double h3 = 0.5 * s3 - s4 + 0.5 * s5;
  const double h4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
  const double h5 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;

  const double g0 = -30.0 * s2 + 60.0 * s3 - 30.0 * s4;
  const double g1 = 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4;
  const double g2 = s - 4.5 * s2 + 6.0 * s3 - 2.5 * s4;
  const double g3 = 1.5 * s2 - 4.0 * s3 + 2.5 * s4;
  const double g4 = -12.0 * s2 + 28.0 * s3 - 15.0 * s4;
  const double g5 = 30.0 * s2 - 60.0 * s3 + 30.0 * s4;

  const double value =
      h0 * y0 + h * h1 * d0 + h * h * (h2 * a0 + h3 * a1) + h * h4 * d1 + h5 * y1;
  const double slope =
      (g0 * y0 + h * g1 * d0 + h * h * (g2 * a0 + g3 * a1) + h * g4 * d1 + g5 * y1) / h;
  return {value, slope};
}

std::size_t segment_of(const Branch& b, double t) {
  const auto it = std::upper_bound(b.t.begin(), b.t.end(), t);
  const auto k = static_cast<std::size_t>(it - b.t.begin());
  if (k == 0) return 0;
  return std::min(k - 1, b.t.size() - 2);
}

template <class System, class Stop>
Branch integrate_branch(System system, State y, const ShootingOptions& o, Stop stop) {
  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_controlled(o.abs_tol, o.rel_tol, odeint::runge_kutta_dopri5<State>());
  Branch branch;
  const auto record = [&](double t, const State& state) {
    State dy{};
    system(state, dy, t);
    branch.t.push_back(t);
    branch.y.push_back(state);
    branch.accel.push_back(dy[1]);
  };
  double t = 0.0;
  double dt = 1e-3;
  record(t, y);
  int rejected = 0;
  while (t < o.horizon) {
    dt = std::min(dt, o.max_step);
    if (stepper.try_step(system, y, t, dt) == odeint::success) {
      rejected = 0;
      if (!std::isfinite(y[0]) || !std::isfinite(y[1])) break;
      record(t, y);
      if (stop(y)) break;
    } else if (++rejected > 500) {
      break;
    }
  }
  return branch;
}

double lambda_unstable(double c, double slope_at_one) {
  return 0.5 * (-c + std::sqrt(c * c - 4.0 * slope_at_one));
}

double mu_stable(double c, double slope_at_zero) {
  return 0.5 * (-c - std::sqrt(c * c - 4.0 * slope_at_zero));
}

// +1: the trajectory leaving w = 1 overshoots w = 0; -1: it turns back; 0: undecided.
int classify_shot(const Reaction& F, double c, const ShootingOptions& o) {
  const double lambda = lambda_unstable(c, F.slope_at_one());
  const auto system = [&](const State& y, State& dy, double) {
    dy[0] = -y[1];
    dy[1] = -c * y[1] - F.at_complement(y[0]);
  };
  const Branch b = integrate_branch(system, State{o.eps, -o.eps * lambda}, o,
                                    [](const State& y) { return y[0] > 1.0 || y[1] > 0.0; });
  const State& last = b.y.back();
  if (last[0] > 1.0) return 1;
  if (last[1] > 0.0) return -1;
  return 0;
}

// Locates y0 = 1/2 on the last segment of a branch; returns (t, profile slope).
std::optional<std::pair<double, double>> half_crossing(const Branch& b) {
  const std::size_t n = b.t.size();
  if (n < 2) return std::nullopt;
  const std::size_t i = n - 2;
  if (!(b.y[i][0] < 0.5 && b.y[i + 1][0] >= 0.5)) return std::nullopt;
  const auto g = [&](double t) { return hermite(b, i, t).value - 0.5; };
  double lo = b.t[i];
  double hi = b.t[i + 1];
  double t_cross = hi;
  const double glo = g(lo);
  const double ghi = g(hi);
  if (ghi == 0.0) {
    t_cross = hi;
  } else if (glo * ghi < 0.0) {
    boost::uintmax_t iters = 100;
    const auto [a, bb] = boost::math::tools::toms748_solve(
        g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), iters);
    t_cross = 0.5 * (a + bb);
  } else {
    return std::nullopt;
  }
  return std::make_pair(t_cross, -hermite(b, i, t_cross).slope);
}

std::optional<ShootingBranches> build_branches(const Reaction& F, double c, const ShootingOptions& o) {
  ShootingBranches sb;
  sb.c = c;
  sb.eps = o.eps;
  sb.lambda = lambda_unstable(c, F.slope_at_one());
  sb.mu = mu_stable(c, F.slope_at_zero());

  const auto forward_system = [&](const State& y, State& dy, double) {
    dy[0] = -y[1];
    dy[1] = -c * y[1] - F.at_complement(y[0]);
  };
  sb.forward = integrate_branch(forward_system, State{o.eps, -o.eps * sb.lambda}, o,
                                [](const State& y) { return y[0] >= 0.5 || y[1] > 0.0; });
  const auto fwd = half_crossing(sb.forward);
  if (!fwd) return std::nullopt;

  const auto backward_system = [&](const State& y, State& dy, double) {
    dy[0] = -y[1];
    dy[1] = c * y[1] + F(y[0]);
  };
  sb.backward = integrate_branch(backward_system, State{o.eps, sb.mu * o.eps}, o,
                                 [](const State& y) { return y[0] >= 0.5 || y[1] > 0.0; });
  const auto bwd = half_crossing(sb.backward);
  if (!bwd) return std::nullopt;

  sb.t_cross = fwd->first;
  sb.p_forward = fwd->second;
  sb.s_cross = bwd->first;
  sb.p_backward = bwd->second;
  return sb;
}

double mismatch(const ShootingBranches& sb) { return sb.p_forward - sb.p_backward; }

}  // namespace

Reaction::Reaction(std::function<double(double)> at_complement, double slope_at_zero,
                   double slope_at_one, std::string tag)
    : at_complement_(std::move(at_complement)),
      slope_at_zero_(slope_at_zero),
      slope_at_one_(slope_at_one),
      tag_(std::move(tag)) {}

Reaction Reaction::from_response(const ResponseFunction& f) {
  return Reaction(
      [f](double q) { return (1.0 - q) * (q - f.value_at_complement(q)); },
      1.0 - f.value(0.0), -1.0 - f.derivative(1.0, 1), "f");
}

Reaction Reaction::from_envelope(const ResponseFunction& f, const EnvelopePair& envelopes,
                                 EnvelopeSide side) {
  const auto table = side == EnvelopeSide::Lower ? envelopes.lower_table() : envelopes.upper_table();
  std::size_t first_exact = table.size() - 1;
  while (first_exact > 0 && table[first_exact - 1] == f.value(envelopes.node(first_exact - 1))) {
    --first_exact;
  }
  const double w_switch = envelopes.node(first_exact);
  return Reaction(
      [f, envelopes, side, w_switch](double q) {
        const double w = 1.0 - q;
        const double fw = w >= w_switch ? f.value_at_complement(q) : envelopes.value(side, w);
        return w * (q - fw);
      },
      1.0 - envelopes.value(side, 0.0), -1.0 - envelopes.slope_at_one(),
      side == EnvelopeSide::Lower ? "f0" : "f1");
}

Reaction Reaction::nagumo(double alpha) {
  return Reaction([alpha](double q) { return (1.0 - q) * q * (1.0 - q - alpha); }, -alpha,
                  -(1.0 - alpha), fmt::format("nagumo({})", alpha));
}

int Reaction::interior_zero_count(std::size_t intervals) const {
  int count = 0;
  double previous = (*this)(1.0 / static_cast<double>(intervals));
  for (std::size_t i = 2; i < intervals; ++i) {
    const double current = (*this)(static_cast<double>(i) / static_cast<double>(intervals));
    if ((previous > 0.0 && current <= 0.0) || (previous < 0.0 && current >= 0.0)) ++count;
    previous = current;
  }
  return count;
}

ProfilePoint NondelayedWave::at(double x) const {
  const ShootingBranches& sb = *branches;
  if (x <= 0.0) {
    const double t = x + sb.t_cross;
    if (t <= 0.0) {
      const double q = sb.eps * std::exp(sb.lambda * t);
      return {1.0 - q, q, -sb.lambda * q};
    }
    const auto hv = hermite(sb.forward, segment_of(sb.forward, t), t);
    return {1.0 - hv.value, hv.value, -hv.slope};
  }
  const double s = sb.s_cross - x;
  if (s <= 0.0) {
    const double w = sb.eps * std::exp(-sb.mu * s);
    return {w, 1.0 - w, sb.mu * w};
  }
  const auto hv = hermite(sb.backward, segment_of(sb.backward, s), s);
  return {hv.value, 1.0 - hv.value, -hv.slope};
}

NondelayedWave solve_nondelayed(const Reaction& F, const ShootingOptions& o) {
  if (!(F.slope_at_zero() < 0.0) || !(F.slope_at_one() < 0.0) || F.interior_zero_count() != 1) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("reaction {} is not bistable (F'(0)={}, F'(1)={})", F.tag(),
                            F.slope_at_zero(), F.slope_at_one()));
  }
  if (!(o.tol_c > 0.0) || !(o.c_min < o.c_max) || o.n < 3) {
    throw Error(ErrorCode::InvalidArgument, "invalid shooting options");
  }

  double lo = o.c_min;
  double hi = o.c_max;
  if (classify_shot(F, lo, o) <= 0 || classify_shot(F, hi, o) > 0) {
    throw Error(ErrorCode::NoBracket,
                fmt::format("speed interval [{}, {}] does not bracket the front of {}; widen it",
                            lo, hi, F.tag()));
  }
  while (hi - lo > o.tol_c) {
    const double mid = 0.5 * (lo + hi);
    if (classify_shot(F, mid, o) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double bracket = hi - lo;
  double c = 0.5 * (lo + hi);
  std::optional<ShootingBranches> best = build_branches(F, c, o);

  // Secant polish on the branch mismatch; kept only if it stays near the bracket.
  auto a = build_branches(F, lo, o);
  auto b = build_branches(F, hi, o);
  if (a && b) {
    double ca = lo;
    double cb = hi;
    double ga = mismatch(*a);
    double gb = mismatch(*b);
    for (int it = 0; it < 40 && gb != ga; ++it) {
      const double cn = cb - gb * (cb - ca) / (gb - ga);
      if (!(std::abs(cn - c) <= 10.0 * o.tol_c + bracket)) break;
      auto next = build_branches(F, cn, o);
      if (!next) break;
      ca = cb;
      ga = gb;
      cb = cn;
      gb = mismatch(*next);
      best = std::move(next);
      c = cn;
      if (std::abs(cb - ca) <= 1e-15 * std::max(1.0, std::abs(cb))) break;
    }
  }
  if (!best) {
    throw Error(ErrorCode::NoConvergence,
                fmt::format("shooting branches of {} do not reach w = 1/2 at c = {}", F.tag(), c));
  }

  NondelayedWave wave;
  wave.c = best->c;
  wave.tag = F.tag();
  wave.bracket_width = bracket;
  wave.branches = std::make_shared<const ShootingBranches>(std::move(*best));
  wave.x.resize(o.n);
  wave.w.resize(o.n);
  wave.dw.resize(o.n);
  const double dx = 2.0 * o.L / static_cast<double>(o.n - 1);
  for (std::size_t i = 0; i < o.n; ++i) {
    wave.x[i] = -o.L + static_cast<double>(i) * dx;
    const ProfilePoint pt = wave.at(wave.x[i]);
    wave.w[i] = pt.w;
    wave.dw[i] = pt.dw;
  }
  return wave;
}

SpeedBounds speed_bounds(const ResponseFunction& f, const ShootingOptions& options) {
  const EnvelopePair envelopes = monotone_envelopes(f);
  const Reaction lower = Reaction::from_envelope(f, envelopes, EnvelopeSide::Lower);
  const Reaction upper = Reaction::from_envelope(f, envelopes, EnvelopeSide::Upper);
  for (const Reaction* r : {&lower, &upper}) {
    if (!(r->slope_at_zero() < 0.0) || !(r->slope_at_one() < 0.0) || r->interior_zero_count() != 1) {
      throw Error(ErrorCode::EnvelopeDegenerate,
                  fmt::format("envelope reaction {} is not bistable", r->tag()));
    }
  }
  SpeedBounds out{};
  out.c0 = solve_nondelayed(lower, options).c;
  out.c1 = solve_nondelayed(upper, options).c;
  out.c_star = std::max(std::abs(out.c0), std::abs(out.c1));
  return out;
}

}  // namespace delaywave
