#include "delaywave/driver.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>

#include <fmt/format.h>

#include "delaywave/continuation.hpp"
#include "delaywave/error.hpp"
#include "delaywave/pde_sim.hpp"
#include "delaywave/selfcheck.hpp"
#include "delaywave/spectrum.hpp"

namespace delaywave {
namespace {

std::string number(double v) { return fmt::format("{:.17g}", v); }

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};

class CsvWriter {
 public:
  CsvWriter(const std::string& out_dir, const std::string& name, std::string_view header,
            RunSummary& summary) {
    if (out_dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    path_ = (std::filesystem::path(out_dir) / name).string();
    file_.reset(std::fopen(path_.c_str(), "wb"));
    if (!file_) throw Error(ErrorCode::IoError, fmt::format("cannot write '{}'", path_));
    fmt::print(file_.get(), "{}\n", header);
    summary.artifacts.push_back(path_);
  }

  template <typename... Values>
  void row(const Values&... values) {
    if (!file_) return;
    std::string line;
    ((line += (line.empty() ? "" : ","), line += cell(values)), ...);
    line += '\n';
    if (std::fwrite(line.data(), 1, line.size(), file_.get()) != line.size()) {
      throw Error(ErrorCode::IoError, fmt::format("write to '{}' failed", path_));
    }
  }

  void close() {
    if (file_ && std::fclose(file_.release()) != 0) {
      throw Error(ErrorCode::IoError, fmt::format("closing '{}' failed", path_));
    }
  }

 private:
  static std::string cell(double v) { return number(v); }
  static std::string cell(bool v) { return v ? "true" : "false"; }

  std::string path_;
  std::unique_ptr<std::FILE, FileCloser> file_;
};

ProfileOptions profile_options(const Config& c) {
  ProfileOptions o;
  o.L = c.L;
  o.n = c.n;
  o.newton_tol = c.newton_tol;
  o.max_iter = c.max_iter;
  o.mode = c.mode;
  o.alpha = c.alpha;
  return o;
}

ShootingOptions shooting_options(const Config& c) {
  ShootingOptions o;
  o.L = c.L;
  o.n = c.n;
  return o;
}

SweepOptions sweep_options(const Config& c, double tau_max) {
  SweepOptions o;
  o.tau_max = tau_max;
  o.dtau = c.dtau;
  o.profile = profile_options(c);
  o.shooting = shooting_options(c);
  return o;
}

void check_tau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("tau={} must be finite and >= 0", tau));
  }
}

// Continuation from tau = 0 up to config.tau; the last step is the wave.
WaveSolution wave_at_tau(const ResponseFunction& f, const Config& c) {
  check_tau(c.tau);
  Sweep sweep = continue_in_tau(f, sweep_options(c, c.tau));
  return std::move(sweep.steps.back());
}

void write_profile(const std::string& out_dir, const std::string& name, const Grid& grid,
                   const std::vector<double>& w, const std::vector<double>& dw,
                   RunSummary& summary) {
  CsvWriter csv(out_dir, name, "x,w,dw", summary);
  for (std::size_t i = 0; i < grid.n; ++i) csv.row(grid.x(i), w[i], dw[i]);
  csv.close();
}

void add_decay(RunSummary& s, const WaveSolution& w) {
  if (!w.decay) {
    s.add("gamma_plus", std::string("nan"));
    s.add("gamma_minus", std::string("nan"));
    return;
  }
  s.add("gamma_plus", w.decay->gamma_plus_fit);
  s.add("gamma_plus_pred", w.decay->gamma_plus_pred);
  s.add("gamma_minus", w.decay->gamma_minus_fit);
  s.add("gamma_minus_pred", w.decay->gamma_minus_pred);
}

RunSummary run_validate(const Config& c) {
  RunSummary s;
  const BistableStructure st = characterize(ResponseFunction::polynomial(c.kappa, c.a, c.b));
  s.add("w0", st.w0);
  s.add("f_prime_w0", st.slope_at_w0);
  s.add("wstar", st.wstar);
  for (const ConditionCheck& check : st.report) {
    s.add(std::string(condition_name(check.condition)), std::string(check.passed ? "pass" : "fail"));
  }
  s.add("all_passed", st.all_passed());
  s.exit_status = st.all_passed() ? 0 : 1;
  return s;
}

RunSummary run_wave0(const ResponseFunction& f, const Config& c, const std::string& out_dir) {
  RunSummary s;
  const NondelayedWave wave = solve_nondelayed(Reaction::from_response(f), shooting_options(c));
  const SpeedBounds bounds = speed_bounds(f, shooting_options(c));
  s.add("c", wave.c);
  s.add("c0", bounds.c0);
  s.add("c1", bounds.c1);
  s.add("c_star", bounds.c_star);
  s.add("bracket_width", wave.bracket_width);
  CsvWriter csv(out_dir, "wave0.csv", "x,w,dw", s);
  for (std::size_t i = 0; i < wave.x.size(); ++i) csv.row(wave.x[i], wave.w[i], wave.dw[i]);
  csv.close();
  return s;
}

RunSummary run_wave(const ResponseFunction& f, const Config& c, const std::string& out_dir) {
  RunSummary s;
  const WaveSolution w = wave_at_tau(f, c);
  s.add("tau", w.tau);
  s.add("mode", std::string(mode_name(w.mode)));
  s.add("c", w.c);
  s.add("iterations", static_cast<long long>(w.iterations));
  s.add("residual", w.residual);
  s.add("monotone", w.monotone);
  s.add("norm_Emu", w.norm.total);
  add_decay(s, w);
  write_profile(out_dir, "wave.csv", w.grid, w.w, w.dw, s);
  return s;
}

RunSummary run_sweep(const ResponseFunction& f, const Config& c, const std::string& out_dir) {
  RunSummary s;
  const Sweep sweep = continue_in_tau(f, sweep_options(c, c.tau_max));
  CsvWriter csv(out_dir, "sweep.csv", "tau,c,norm_Emu,gamma_plus,gamma_minus,monotone", s);
  bool bounds_ok = true;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < sweep.steps.size(); ++k) {
    const WaveSolution& w = sweep.steps[k];
    csv.row(w.tau, w.c, w.norm.total, w.decay ? w.decay->gamma_plus_fit : nan,
            w.decay ? w.decay->gamma_minus_fit : nan, w.monotone);
    bounds_ok = bounds_ok && sweep.bound_checks[k].all();
  }
  csv.close();
  s.add("steps", static_cast<long long>(sweep.steps.size()));
  s.add("halvings", static_cast<long long>(sweep.halvings));
  s.add("c_first", sweep.steps.front().c);
  s.add("c_last", sweep.steps.back().c);
  s.add("c0", sweep.bounds.c0);
  s.add("c1", sweep.bounds.c1);
  s.add("bounds_ok", bounds_ok);
  s.add("max_norm_Emu", sweep.max_weighted_norm);
  s.exit_status = bounds_ok ? 0 : 1;
  return s;
}

RunSummary run_spectrum(const ResponseFunction& f, const Config& c, const std::string& out_dir) {
  RunSummary s;
  const WaveSolution w = wave_at_tau(f, c);
  const SpectrumReport rep = essential_curves(f, w.c, w.tau, c.xi_max, c.n_xi);
  CsvWriter csv(out_dir, "spectrum.csv", "xi,re_plus,im_plus,re_minus,im_minus", s);
  for (std::size_t i = 0; i < rep.xi.size(); ++i) {
    csv.row(rep.xi[i], rep.plus[i].real(), rep.plus[i].imag(), rep.minus[i].real(),
            rep.minus[i].imag());
  }
  csv.close();
  s.add("tau", w.tau);
  s.add("c", w.c);
  s.add("max_re_plus", rep.max_re_plus);
  s.add("max_re_minus", rep.max_re_minus);
  s.add("ns", rep.ns);
  s.add("margin", rep.margin);
  s.exit_status = rep.ns ? 0 : 1;
  return s;
}

RunSummary run_simulate(const ResponseFunction& f, const Config& c, const std::string& out_dir) {
  RunSummary s;
  check_tau(c.tau);
  SimOptions o;
  o.L_sim = c.L_sim;
  o.dx = c.dx;
  o.dt_target = c.dt_target;
  SimState state = SimState::delayed(f, c.tau, o, [](double x) { return cutoff(x); });
  state.run_until(c.t_final);
  const SpeedFit fit = measure_speed(state);

  CsvWriter track(out_dir, "front_track.csv", "t,x_half", s);
  for (const FrontSample& p : state.track()) track.row(p.t, p.x_half);
  track.close();
  CsvWriter final_profile(out_dir, "final_profile.csv", "x,v", s);
  for (std::size_t i = 0; i < state.size(); ++i) final_profile.row(state.x(i), state.field()[i]);
  final_profile.close();

  s.add("tau", c.tau);
  s.add("t_final", state.time());
  s.add("dt", state.dt());
  s.add("c_sim", fit.c_sim);
  s.add("stderr", fit.stderr_c);
  s.add("x_half", state.front_position());
  return s;
}

RunSummary run_check() {
  RunSummary s;
  long long passed = 0;
  for (const CriterionResult& r : run_acceptance()) {
    s.add(fmt::format("criterion_{}_{}", r.id, r.name), std::string(r.passed ? "pass" : "fail"));
    passed += r.passed ? 1 : 0;
  }
  s.add("passed", passed);
  s.add("failed", static_cast<long long>(AcceptanceSuite::count) - passed);
  s.exit_status = passed == AcceptanceSuite::count ? 0 : 1;
  return s;
}

}  // namespace

void RunSummary::add(std::string key, std::string value) {
  entries.emplace_back(std::move(key), std::move(value));
}
void RunSummary::add(std::string key, double value) { add(std::move(key), number(value)); }
void RunSummary::add(std::string key, bool value) {
  add(std::move(key), std::string(value ? "true" : "false"));
}
void RunSummary::add(std::string key, long long value) { add(std::move(key), std::to_string(value)); }

RunSummary run_command(std::string_view name, const Config& config, const std::string& out_dir) {
  if (name == "validate") return run_validate(config);
  if (name == "check") return run_check();
  const bool known = name == "wave0" || name == "wave" || name == "sweep" || name == "spectrum" ||
                     name == "simulate";
  if (!known) throw Error(ErrorCode::UnknownCommand, fmt::format("unknown command '{}'", name));
  const ResponseFunction f = make_family(config.kappa, config.a, config.b);
  if (name == "wave0") return run_wave0(f, config, out_dir);
  if (name == "wave") return run_wave(f, config, out_dir);
  if (name == "sweep") return run_sweep(f, config, out_dir);
  if (name == "spectrum") return run_spectrum(f, config, out_dir);
  return run_simulate(f, config, out_dir);
}

std::string format_summary(const RunSummary& summary) {
  std::string out;
  for (const auto& [k, v] : summary.entries) out += fmt::format("{}={}\n", k, v);
  return out;
}

}  // namespace delaywave
