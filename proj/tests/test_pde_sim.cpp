#include <doctest.h>

#include <cmath>
#include <tuple>

#include "delaywave/error.hpp"
#include "delaywave/pde_sim.hpp"

using namespace delaywave;

namespace {
const ResponseFunction A = ResponseFunction::polynomial(0.0, 1.2, 3.0);
}

TEST_CASE("time step divides the delay") {
  SimOptions o;
  o.L_sim = 5.0;
  o.dt_target = 0.03;
  const SimState s = SimState::delayed(A, 0.5, o, [](double x) { return cutoff(x); });
  CHECK(s.dt() == doctest::Approx(0.5 / 17.0).epsilon(1e-15));
  CHECK(s.ring_length() == 18);
  CHECK(s.size() == 201);
  CHECK(s.x(0) == -5.0);

  o.dt_target = 2.0;
  CHECK_THROWS_AS(SimState::delayed(A, 0.5, o, [](double) { return 0.0; }), Error);
  CHECK_THROWS_AS(SimState::delayed(A, -1.0, SimOptions{}, [](double) { return 0.0; }), Error);
}

TEST_CASE("constant states are fixed points") {
  SimOptions o;
  o.L_sim = 10.0;
  for (double level : {0.0, 1.0}) {
    SimState s = SimState::delayed(A, 0.3, o, [=](double) { return level; });
    for (int k = 0; k < 200; ++k) s.step();
    for (double v : s.field()) CHECK(std::abs(v - level) <= 1e-15);
  }
}

TEST_CASE("Nagumo simulation speed") {
  SimOptions o;
  o.L_sim = 60.0;
  SimState s = SimState::nondelayed(Reaction::nagumo(0.3), o,
                                    [](double x) { return 1.0 / (1.0 + std::exp(x / std::sqrt(2.0))); });
  s.run_until(60.0);
  const SpeedFit fit = measure_speed(s);
  CHECK(std::abs(fit.c_sim - 0.28284271247461901) <= 5e-3);
  CHECK(fit.t_begin == doctest::Approx(30.0));
  CHECK(fit.points > 100);
  CHECK(s.front_position() == doctest::Approx(0.28284271247461901 * 60.0).epsilon(0.02));
}

TEST_CASE("delayed field stays in the invariant region") {
  SimOptions o;
  o.L_sim = 40.0;
  for (const auto& [kappa, a, b] : {std::tuple{0.0, 1.2, 3.0}, std::tuple{0.5, 0.8, 2.6},
                                    std::tuple{0.0, 1.05, 2.2}}) {
    SimState s = SimState::delayed(make_family(kappa, a, b), 1.0, o, [](double x) { return cutoff(x); });
    double lo = 1.0, hi = 0.0;
    while (s.time() < 20.0 - 1e-9) {
      s.step();
      for (double v : s.field()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    CHECK(lo >= -1e-8);
    CHECK(hi <= 1.0 + 1e-8);
  }
}

TEST_CASE("speed window errors") {
  SimOptions o;
  o.L_sim = 10.0;
  SimState s = SimState::nondelayed(Reaction::nagumo(0.3), o, [](double x) { return cutoff(x); });
  s.run_until(1.0);
  try {
    measure_speed(s);
    FAIL("expected WindowTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowTooShort);
  }
  s.run_until(10.0);
  try {
    measure_speed(s, 0.5);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("guard band") {
  SimOptions o;
  o.L_sim = 5.0;
  SimState s = SimState::nondelayed(Reaction::nagumo(0.3), o,
                                    [](double x) { return std::abs(x) < 1.0 ? 1.2 : 0.0; });
  try {
    s.step();
    FAIL("expected BlowUp");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BlowUp);
  }
}

TEST_CASE("exact front is stationary in its own frame") {
  const NondelayedWave wave = solve_nondelayed(Reaction::nagumo(0.3));
  const Grid grid = Grid::symmetric(60.0, 2401);
  ComparisonOptions opts;
  opts.t_final = 5.0;
  const ComparisonVerdict up = envelope_comparison_run(Reaction::nagumo(0.3), grid, wave.w, wave.c,
                                                       Direction::Nondecreasing, opts);
  const ComparisonVerdict down = envelope_comparison_run(Reaction::nagumo(0.3), grid, wave.w, wave.c,
                                                         Direction::Nonincreasing, opts);
  CHECK(up.holds);
  CHECK(down.holds);
  CHECK(up.steps == 500);
  // a faster reaction pushes the front forward: u increases everywhere
  const ComparisonVerdict push = envelope_comparison_run(Reaction::nagumo(0.2), grid, wave.w, wave.c,
                                                         Direction::Nondecreasing, opts);
  CHECK(push.holds);
  CHECK_FALSE(envelope_comparison_run(Reaction::nagumo(0.2), grid, wave.w, wave.c,
                                      Direction::Nonincreasing, opts)
                  .holds);
}
