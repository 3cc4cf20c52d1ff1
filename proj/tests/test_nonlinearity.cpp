#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "delaywave/error.hpp"
#include "delaywave/nonlinearity.hpp"

using namespace delaywave;
using doctest::Approx;

namespace {

const ResponseFunction A = ResponseFunction::polynomial(0.0, 1.2, 3.0);
const ResponseFunction B = ResponseFunction::polynomial(0.5, 0.8, 2.6);
const ResponseFunction C = ResponseFunction::polynomial(0.0, 1.05, 2.2);

}  // namespace

TEST_CASE("response values and derivatives") {
  // f(w) = (1 - w)^2 (1.2 + 3 w)
  CHECK(A.value(0.0) == Approx(1.2).epsilon(1e-15));
  CHECK(A.value(1.0) == 0.0);
  CHECK(A.value(0.5) == Approx(0.675).epsilon(1e-15));
  CHECK(A.derivative(0.0, 1) == Approx(0.6).epsilon(1e-14));
  CHECK(A.derivative(0.3, 2) == Approx(2.0 * (1.2 + 0.9) - 12.0 * 0.7).epsilon(1e-12));
  CHECK(A.derivative(0.3, 3) == Approx(18.0).epsilon(1e-14));
  CHECK(A.derivative(0.3, 4) == 0.0);
  CHECK(B.derivative(1.0, 1) == Approx(-0.5).epsilon(1e-15));
  CHECK(A.value_at_complement(1e-9) == Approx(4.2e-18).epsilon(1e-8));

  const double h = 1e-5;
  for (double w : {0.1, 0.4, 0.8}) {
    const double fd = (C.value(w + h) - C.value(w - h)) / (2 * h);
    CHECK(C.derivative(w, 1) == Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("family constructor rejects inadmissible parameters") {
  CHECK_NOTHROW(make_family(0.0, 1.2, 3.0));
  CHECK_THROWS_AS(make_family(-0.1, 1.2, 3.0), Error);
  CHECK_THROWS_AS(make_family(1.0, 1.2, 3.0), Error);
  CHECK_THROWS_AS(make_family(0.0, 0.9, 3.0), Error);  // f(0) < 1
  CHECK_THROWS_AS(make_family(0.0, 1.2, 2.0), Error);  // f'(0) < 0
  try {
    make_family(0.0, 0.0, 3.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("integral of F matches the closed form") {
  using boost::math::quadrature::gauss;
  const auto integral = [](const ResponseFunction& f) {
    return gauss<double, 10>::integrate([&](double w) { return reaction(f, w); }, 0.0, 1.0);
  };
  CHECK(integral(A) == Approx(-1.0 / 30.0).epsilon(1e-13));
  CHECK(integral(B) == Approx(-7.0 / 100.0).epsilon(1e-13));
  CHECK(integral(C) == Approx(7.0 / 1200.0).epsilon(1e-12));
}

TEST_CASE("landmarks of the three families") {
  struct Case {
    const ResponseFunction* f;
    double w0, slope, wstar;
  };
  for (const Case& k : {Case{&A, 0.69581140290126391, -1.7224078921853084, 0.319214922059728},
                        Case{&B, 0.83113539280455737, -1.4258603355354950, 0.378430238123564},
                        Case{&C, 0.56308904653072167, -1.5800394012248454, 0.146051650291816}}) {
    const BistableStructure st = characterize(*k.f);
    CHECK(st.all_passed());
    CHECK(st.report.size() == 9);
    CHECK(std::abs(st.w0 - k.w0) <= 1e-9);
    CHECK(std::abs(st.slope_at_w0 - k.slope) <= 1e-9);
    CHECK(std::abs(st.wstar - k.wstar) <= 1e-9);
  }
  CHECK(characterize(A).f1_breakpoint == Approx(1.0 / 15.0).epsilon(1e-9));
  CHECK(characterize(C).f1_breakpoint == Approx(1.0 / 66.0).epsilon(1e-9));
  CHECK(characterize(A).f0_breakpoint == Approx(0.13667504192892).epsilon(1e-9));
  CHECK(characterize(C).f0_breakpoint == Approx(0.0304600576869999).epsilon(1e-9));
}

TEST_CASE("violated conditions are reported, not thrown") {
  const BistableStructure st = characterize(ResponseFunction::polynomial(0.0, 1.2, 1.0));
  CHECK_FALSE(st.all_passed());
  CHECK_FALSE(st.check(Condition::IncreasingAtZero).passed);
  CHECK(st.check(Condition::IncreasingAtZero).witness == Approx(-1.4));
  CHECK(st.check(Condition::ValueAtZeroAboveOne).passed);

  const BistableStructure low = characterize(ResponseFunction::polynomial(0.0, 0.8, 3.0));
  CHECK_FALSE(low.check(Condition::ValueAtZeroAboveOne).passed);
}

TEST_CASE("monotone envelopes sandwich f") {
  const EnvelopePair env = monotone_envelopes(A);
  // max of f sits at 1/15, between table nodes
  CHECK(std::abs(env.upper(0.0) - 1.21955555555556) < 1e-7);
  CHECK(env.upper(0.0) <= 1.21955555555556);
  CHECK(env.lower(0.0) == Approx(1.2).epsilon(1e-15));
  CHECK(env.slope_at_one() == Approx(0.0).epsilon(1e-15));
  double prev_lo = 2.0;
  double prev_up = 2.0;
  for (std::size_t i = 0; i < env.size(); ++i) {
    const double w = env.node(i);
    const double lo = env.lower_table()[i];
    const double up = env.upper_table()[i];
    CHECK(lo <= A.value(w) + 1e-15);
    CHECK(up >= A.value(w) - 1e-15);
    CHECK(lo <= prev_lo);
    CHECK(up <= prev_up);
    prev_lo = lo;
    prev_up = up;
  }
  // f0 = f beyond the breakpoint, f1 = f beyond the argmax
  CHECK(env.lower(0.5) == Approx(A.value(0.5)).epsilon(1e-6));
  CHECK(env.upper(0.5) == Approx(A.value(0.5)).epsilon(1e-6));
  CHECK(env.value(EnvelopeSide::Lower, -1.0) == env.lower(0.0));
}
