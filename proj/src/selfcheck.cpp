#include "delaywave/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <random>

#include <fmt/format.h>

#include "delaywave/continuation.hpp"
#include "delaywave/error.hpp"
#include "delaywave/pde_sim.hpp"
#include "delaywave/spectrum.hpp"

namespace delaywave {
namespace {

const ResponseFunction& family_a() {
  static const ResponseFunction f = make_family(0.0, 1.2, 3.0);
  return f;
}
const ResponseFunction& family_b() {
  static const ResponseFunction f = make_family(0.5, 0.8, 2.6);
  return f;
}
const ResponseFunction& family_c() {
  static const ResponseFunction f = make_family(0.0, 1.05, 2.2);
  return f;
}

// Root of f(w) = 1 - w in (0, 1): with s = 1 - w, b s^2 - (a + b) s + (1 - kappa) = 0,
// smaller root taken in its cancellation-free form.
double crossing_oracle(const ResponseFunction& f) {
  const double ab = f.a() + f.b();
  const double disc = ab * ab - 4.0 * f.b() * (1.0 - f.kappa());
  return 1.0 - 2.0 * (1.0 - f.kappa()) / (ab + std::sqrt(disc));
}

double crossing_slope_oracle(const ResponseFunction& f, double w0) {
  const double s = 1.0 - w0;
  return -(f.kappa() + 2.0 * (f.a() + f.b()) * s - 3.0 * f.b() * s * s);
}

double sup_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

const WaveSolution& step_at(const Sweep& sweep, double tau) {
  for (const WaveSolution& s : sweep.steps) {
    if (std::abs(s.tau - tau) < 1e-12) return s;
  }
  throw Error(ErrorCode::InvalidArgument, fmt::format("sweep has no step at tau={}", tau));
}

// Count of grid pairs where w fails to decrease strictly, read from 1 - w so
// that the left tail is resolved.
std::size_t monotonicity_violations(const WaveSolution& s) {
  const auto q = s.complement();
  std::size_t bad = 0;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    if (!(q[i + 1] > q[i])) ++bad;
  }
  return bad;
}

std::string pass_word(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

struct AcceptanceSuite::Cache {
  std::optional<Sweep> sweep_a;
  std::optional<Sweep> sweep_c;
  std::optional<Sweep> sweep_a_fine;

  const Sweep& a() {
    if (!sweep_a) sweep_a = continue_in_tau(family_a());
    return *sweep_a;
  }
  const Sweep& c() {
    if (!sweep_c) sweep_c = continue_in_tau(family_c());
    return *sweep_c;
  }
  const Sweep& a_fine() {
    if (!sweep_a_fine) {
      SweepOptions o;
      o.profile.n = 4801;
      o.shooting.n = 4801;
      sweep_a_fine = continue_in_tau(family_a(), o);
    }
    return *sweep_a_fine;
  }
};

AcceptanceSuite::AcceptanceSuite() : cache_(std::make_unique<Cache>()) {}
AcceptanceSuite::~AcceptanceSuite() = default;

CriterionResult AcceptanceSuite::run(int id) {
  static const char* const names[count] = {
      "nagumo_oracle",    "condition_validator", "tau0_consistency", "existence_sweep",
      "speed_bounds",     "simulation_crosscheck", "essential_spectrum", "decay_rates",
      "operator_fidelity", "envelope_dynamics",  "weighted_bound",
  };
  if (id < 1 || id > count) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("no acceptance criterion {}", id));
  }
  CriterionResult r;
  r.id = id;
  r.name = names[id - 1];
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    switch (id) {
      case 1: {
        const double exact = (1.0 - 2.0 * 0.3) / std::sqrt(2.0);
        const double c3 = solve_nondelayed(Reaction::nagumo(0.3)).c;
        const double c5 = solve_nondelayed(Reaction::nagumo(0.5)).c;
        const double t = elapsed();
        r.passed = std::abs(c3 - exact) <= 1e-3 && std::abs(c5) <= 1e-3 && t < 10.0;
        r.detail = fmt::format("c(0.3)-exact={:.2e} c(0.5)={:.2e} fast={}", c3 - exact, c5,
                               t < 10.0);
        break;
      }
      case 2: {
        bool ok = true;
        std::string detail;
        for (const auto& [tag, f] : {std::pair{"A", &family_a()}, std::pair{"B", &family_b()},
                                     std::pair{"C", &family_c()}}) {
          const BistableStructure st = characterize(*f);
          const double w0 = crossing_oracle(*f);
          const double dw0 = st.w0 - w0;
          const double dslope = st.slope_at_w0 - crossing_slope_oracle(*f, w0);
          const bool fam = st.all_passed() && std::abs(dw0) <= 1e-9 && std::abs(dslope) <= 1e-9;
          ok = ok && fam;
          detail += fmt::format("{}{}:conditions={} dw0={:.1e} dslope={:.1e}",
                                detail.empty() ? "" : " ", tag, pass_word(st.all_passed()), dw0,
                                dslope);
        }
        r.passed = ok;
        r.detail = detail;
        break;
      }
      case 3: {
        bool ok = true;
        std::string detail;
        for (const auto& [tag, f] : {std::pair{"A", &family_a()}, std::pair{"C", &family_c()}}) {
          const NondelayedWave wave = solve_nondelayed(Reaction::from_response(*f));
          const WaveSolution s =
              solve_profile(*f, 0.0, guess_from_shooting(wave, Grid::symmetric(60.0, 2401)));
          const double dc = s.c - wave.c;
          const double dw = sup_difference(s.w, wave.w);
          ok = ok && std::abs(dc) <= 1e-6 && dw <= 1e-6;
          detail += fmt::format("{}{}:dc={:.1e} sup_dw={:.1e}", detail.empty() ? "" : " ", tag, dc,
                                dw);
        }
        r.passed = ok;
        r.detail = detail;
        break;
      }
      case 4: {
        bool ok = true;
        std::string detail;
        for (const auto& [tag, sweep] : {std::pair{"A", &cache_->a()}, std::pair{"C", &cache_->c()}}) {
          std::size_t violations = 0;
          double worst_residual = 0.0;
          for (const WaveSolution& s : sweep->steps) {
            violations += monotonicity_violations(s) + (s.monotone ? 0 : 1);
            worst_residual = std::max(worst_residual, s.residual);
          }
          const bool fam = sweep->steps.size() == 21 && violations == 0 && worst_residual <= 1e-10;
          ok = ok && fam;
          detail += fmt::format("{}{}:steps={} nonmonotone_pairs={} max_residual={:.1e}",
                                detail.empty() ? "" : " ", tag, sweep->steps.size(), violations,
                                worst_residual);
        }
        r.passed = ok;
        r.detail = detail;
        break;
      }
      case 5: {
        bool ok = true;
        std::string detail;
        for (const auto& [tag, sweep] : {std::pair{"A", &cache_->a()}, std::pair{"C", &cache_->c()}}) {
          std::size_t bad = 0;
          for (const BoundCheck& b : sweep->bound_checks) bad += b.all() ? 0 : 1;
          ok = ok && bad == 0 && sweep->bound_checks.size() == sweep->steps.size();
          detail += fmt::format("{}{}:c0={:.6f} c1={:.6f} violations={}", detail.empty() ? "" : " ",
                                tag, sweep->bounds.c0, sweep->bounds.c1, bad);
        }
        r.passed = ok;
        r.detail = detail;
        break;
      }
      case 6: {
        bool ok = true;
        std::string detail;
        for (double tau : {0.0, 0.5, 1.0}) {
          const WaveSolution& s = step_at(cache_->a(), tau);
          SimState state = SimState::delayed(family_a(), tau, {}, [](double x) { return cutoff(x); });
          state.run_until(200.0);
          const SpeedFit fit = measure_speed(state);
          const double dc = fit.c_sim - s.c;
          const double shape = recentered_distance(state, s);
          ok = ok && std::abs(dc) <= 5e-3 && shape <= 5e-3;
          detail += fmt::format("{}tau={}:dc={:.1e} shape={:.1e}", detail.empty() ? "" : " ", tau,
                                dc, shape);
        }
        r.passed = ok;
        r.detail = detail;
        break;
      }
      case 7: {
        bool ok = true;
        double margin = std::numeric_limits<double>::infinity();
        std::size_t checked = 0;
        for (const auto& [f, sweep] :
             {std::pair{&family_a(), &cache_->a()}, std::pair{&family_c(), &cache_->c()}}) {
          for (const WaveSolution& s : sweep->steps) {
            const NsVerdict v = condition_ns(*f, s.c, s.tau);
            ok = ok && v.satisfied && v.margin > 0.0;
            margin = std::min(margin, v.margin);
            ++checked;
          }
        }
        // f(0) = kappa + a = 1 puts lambda_+(0) on the imaginary axis.
        const NsVerdict boundary = condition_ns(ResponseFunction::polynomial(0.0, 1.0, 3.0), 0.0, 0.0);
        ok = ok && !boundary.satisfied;
        r.passed = ok;
        r.detail = fmt::format("points={} min_margin={:.6f} f0_equals_1_rejected={}", checked,
                               margin, !boundary.satisfied);
        break;
      }
      case 8: {
        bool ok = true;
        std::string detail;
        for (double tau : {0.0, 0.5, 1.0}) {
          const WaveSolution& s = step_at(cache_->a(), tau);
          if (!s.decay) {
            ok = false;
            detail += fmt::format("{}tau={}:tail_too_short", detail.empty() ? "" : " ", tau);
            continue;
          }
          const DecayRates& d = *s.decay;
          const double ep = std::abs(d.gamma_plus_fit / d.gamma_plus_pred - 1.0);
          const double em = std::abs(d.gamma_minus_fit / d.gamma_minus_pred - 1.0);
          ok = ok && ep <= 0.05 && em <= 0.05;
          detail += fmt::format("{}tau={}:rel_plus={:.1e} rel_minus={:.1e}",
                                detail.empty() ? "" : " ", tau, ep, em);
        }
        // kappa = 0: f'(1) = 0 and the minus equation is z^2 + c z - 1 = 0.
        const double root =
            characteristic_roots(family_a(), 0.2, 1.0, TailSide::Minus).roots.front();
        const double quadratic = 2.0 / (0.2 + std::sqrt(0.04 + 4.0));
        ok = ok && std::abs(root - quadratic) <= 1e-10;
        r.passed = ok;
        r.detail = detail + fmt::format(" kappa0_root_err={:.1e}", root - quadratic);
        break;
      }
      case 9: {
        const WaveSolution& s = step_at(cache_->a(), 0.5);
        double worst_fd = 0.0;
        for (ProfileMode mode : {ProfileMode::Pinned, ProfileMode::Operator}) {
          const ProfileProblem problem(family_a(), s.tau, s.grid, mode);
          const double c = s.c + 0.0123;
          const ProfileJacobian jac = problem.linearize(s.u, c);
          const bool pinned = mode == ProfileMode::Pinned;
          std::mt19937 rng(20240601);
          std::uniform_real_distribution<double> unit(-1.0, 1.0);
          for (int t = 0; t < 10; ++t) {
            std::vector<double> d(s.grid.n + (pinned ? 1 : 0), 0.0);
            for (std::size_t i = 1; i + 1 < s.grid.n; ++i) d[i] = unit(rng);
            if (pinned) d.back() = unit(rng);
            const double e = 1e-6;
            std::vector<double> up(s.u);
            std::vector<double> um(s.u);
            for (std::size_t i = 0; i < s.grid.n; ++i) {
              up[i] += e * d[i];
              um[i] -= e * d[i];
            }
            const double dc = pinned ? d.back() : 0.0;
            const auto rp = problem.system_residual(up, c + e * dc);
            const auto rm = problem.system_residual(um, c - e * dc);
            const auto jd = jac.apply(d);
            double num = 0.0;
            double den = 0.0;
            for (std::size_t i = 0; i < jd.size(); ++i) {
              const double fd = (rp[i] - rm[i]) / (2.0 * e);
              num = std::max(num, std::abs(fd - jd[i]));
              den = std::max(den, std::abs(fd));
            }
            worst_fd = std::max(worst_fd, num / den);
          }
        }
        const Grid grid = Grid::symmetric(60.0, 2401);
        std::vector<double> u(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i) {
          u[i] = std::exp(-std::abs(grid.x(i))) - cutoff(grid.x(i));
        }
        const double dfun = c_functional(u, grid) - 0.5 * std::log(5.0 / 6.0);
        const WaveSolution recentered = recenter_to_functional(s);
        r.passed = worst_fd <= 1e-5 && std::abs(dfun) <= 1e-6 && recentered.residual <= 1e-9;
        r.detail = fmt::format("jacobian_fd_rel={:.1e} c_functional_err={:.1e} recentered_residual={:.1e}",
                               worst_fd, dfun, recentered.residual);
        break;
      }
      case 10: {
        const EnvelopePair env_a = monotone_envelopes(family_a());
        const EnvelopePair env_c = monotone_envelopes(family_c());
        const Reaction f1_a = Reaction::from_envelope(family_a(), env_a, EnvelopeSide::Upper);
        const Reaction f0_c = Reaction::from_envelope(family_c(), env_c, EnvelopeSide::Lower);
        bool ok = true;
        double worst_a = -std::numeric_limits<double>::infinity();
        double worst_c = std::numeric_limits<double>::infinity();
        for (double tau : {0.0, 0.5, 1.0, 1.5, 2.0}) {
          const ComparisonVerdict va =
              envelope_comparison_run(f1_a, step_at(cache_->a(), tau), Direction::Nonincreasing);
          const ComparisonVerdict vc =
              envelope_comparison_run(f0_c, step_at(cache_->c(), tau), Direction::Nondecreasing);
          ok = ok && va.holds && vc.holds;
          worst_a = std::max(worst_a, va.worst);
          worst_c = std::min(worst_c, vc.worst);
        }
        r.passed = ok;
        r.detail = fmt::format("A_f1_max_increase={:.1e} C_f0_max_decrease={:.1e}", worst_a, worst_c);
        break;
      }
      case 11: {
        const double coarse = cache_->a().max_weighted_norm;
        const double fine = cache_->a_fine().max_weighted_norm;
        const double rel = std::abs(fine / coarse - 1.0);
        r.passed = std::isfinite(coarse) && std::isfinite(fine) && rel <= 0.01;
        r.detail = fmt::format("norm_n2401={:.6f} norm_n4801={:.6f} rel_diff={:.1e}", coarse, fine, rel);
        break;
      }
      default:
        break;
    }
  } catch (const Error& e) {
    r.passed = false;
    r.detail = fmt::format("error={} message={}", error_code_name(e.code()), e.what());
  }
  r.seconds = elapsed();
  return r;
}

std::vector<CriterionResult> run_acceptance(
    const std::function<void(const CriterionResult&)>& on_result) {
  AcceptanceSuite suite;
  std::vector<CriterionResult> out;
  for (int id = 1; id <= AcceptanceSuite::count; ++id) {
    out.push_back(suite.run(id));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace delaywave
