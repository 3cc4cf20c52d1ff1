#include "delaywave/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "delaywave/error.hpp"

namespace delaywave {
namespace {

constexpr std::size_t kScanIntervals = 10000;

// Root of g on [lo, hi] given g(lo) and g(hi) of opposite sign (or one zero).
template <class Fn>
double bracketed_root(Fn g, double lo, double hi) {
  const double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  boost::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), max_iter);
  return 0.5 * (a + b);
}

double scan_node(std::size_t i) {
  return static_cast<double>(i) / static_cast<double>(kScanIntervals);
}

}  // namespace

ResponseFunction ResponseFunction::polynomial(double kappa, double a, double b) noexcept {
  return ResponseFunction(kappa, a, b);
}

double ResponseFunction::value_at_complement(double s) const noexcept {
  return s * (kappa_ + s * ((a_ + b_) - b_ * s));
}

double ResponseFunction::slope_at_complement(double s) const noexcept {
  return -(kappa_ + s * (2.0 * (a_ + b_) - 3.0 * b_ * s));
}

double ResponseFunction::derivative(double w, int order) const noexcept {
  const double s = 1.0 - w;
  switch (order) {
    case 0: return value_at_complement(s);
    case 1: return slope_at_complement(s);
    case 2: return 2.0 * (a_ + b_) - 6.0 * b_ * s;
    case 3: return 6.0 * b_;
    default: return 0.0;
  }
}

ResponseFunction make_family(double kappa, double a, double b) {
  if (!std::isfinite(kappa) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidArgument, "family parameters must be finite");
  }
  if (kappa < 0.0 || kappa >= 1.0) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("kappa={} outside [0, 1)", kappa));
  }
  if (a <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("a={} must be positive", a));
  }
  if (kappa + a <= 1.0) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("f(0)=kappa+a={} must exceed 1", kappa + a));
  }
  if (b <= kappa + 2.0 * a) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("f'(0)=b-kappa-2a={} must be positive", b - kappa - 2.0 * a));
  }
  return ResponseFunction::polynomial(kappa, a, b);
}

double reaction(const ResponseFunction& f, double w) noexcept {
  return w * ((1.0 - w) - f.value(w));
}

std::string_view condition_name(Condition condition) noexcept {
  switch (condition) {
    case Condition::PositiveBelowOne: return "positive_below_one";
    case Condition::VanishesAtOne: return "vanishes_at_one";
    case Condition::SlopeAtOneAboveMinusOne: return "slope_at_one_above_minus_one";
    case Condition::ValueAtZeroAboveOne: return "value_at_zero_above_one";
    case Condition::IncreasingAtZero: return "increasing_at_zero";
    case Condition::AboveOneBelowWstar: return "above_one_below_wstar";
    case Condition::SingleCrossing: return "single_crossing";
    case Condition::SteepCrossing: return "steep_crossing";
    case Condition::DecreasingAboveWstar: return "decreasing_above_wstar";
  }
  return "unknown";
}

bool BistableStructure::all_passed() const noexcept {
  return !report.empty() &&
         std::all_of(report.begin(), report.end(), [](const ConditionCheck& c) { return c.passed; });
}

const ConditionCheck& BistableStructure::check(Condition condition) const {
  for (const auto& entry : report) {
    if (entry.condition == condition) return entry;
  }
  throw Error(ErrorCode::InvalidArgument, "condition not present in report");
}

BistableStructure characterize(const ResponseFunction& f) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  BistableStructure out;
  out.slope_at_zero = f.derivative(0.0, 1);
  out.slope_at_one = f.derivative(1.0, 1);

  std::vector<double> values(kScanIntervals + 1);
  for (std::size_t i = 0; i <= kScanIntervals; ++i) values[i] = f.value(scan_node(i));

  // argmax of f, refined on f' when it sits strictly inside [0, 1].
  const auto max_it = std::max_element(values.begin(), values.end());
  const auto imax = static_cast<std::size_t>(max_it - values.begin());
  double argmax = scan_node(imax);
  if (imax > 0 && imax < kScanIntervals) {
    const auto slope = [&](double w) { return f.derivative(w, 1); };
    const double lo = scan_node(imax - 1);
    const double hi = scan_node(imax + 1);
    if (slope(lo) >= 0.0 && slope(hi) <= 0.0) argmax = bracketed_root(slope, lo, hi);
  }
  out.f1_breakpoint = argmax;
  const double fmax = f.value(argmax);
  const double f_at_zero = f.value(0.0);
  const double f_at_one = f.value(1.0);

  // w*: f(w) = 1 to the right of the maximum.
  double wstar = nan;
  if (fmax > 1.0 && f_at_one < 1.0) {
    wstar = bracketed_root([&](double w) { return f.value(w) - 1.0; }, argmax, 1.0);
  }
  out.wstar = wstar;

  // Lower-envelope breakpoint: first point where f falls back below f(0).
  double breakpoint = 0.0;
  for (std::size_t i = 1; i <= kScanIntervals; ++i) {
    if (values[i] < f_at_zero) {
      if (i > 1) {
        breakpoint = bracketed_root([&](double w) { return f.value(w) - f_at_zero; },
                                    scan_node(i - 1), scan_node(i));
      }
      break;
    }
  }
  out.f0_breakpoint = breakpoint;

  // Crossings of f(w) = 1 - w on the open interval; w = 1 is always a root.
  const auto gap = [&](double w) { return f.value(w) - (1.0 - w); };
  std::size_t crossings = 0;
  std::size_t crossing_interval = 0;
  double previous = gap(0.0);
  for (std::size_t i = 1; i < kScanIntervals; ++i) {
    const double current = gap(scan_node(i));
    if ((previous > 0.0 && current <= 0.0) || (previous < 0.0 && current >= 0.0)) {
      ++crossings;
      crossing_interval = i;
    }
    previous = current;
  }
  double w0 = nan;
  if (crossings == 1) {
    w0 = bracketed_root(gap, scan_node(crossing_interval - 1), scan_node(crossing_interval));
  }
  out.w0 = w0;
  out.slope_at_w0 = std::isnan(w0) ? nan : f.derivative(w0, 1);

  double min_below_one = values[0];
  for (std::size_t i = 0; i < kScanIntervals; ++i) min_below_one = std::min(min_below_one, values[i]);

  double min_excess = nan;
  if (!std::isnan(wstar)) {
    min_excess = f_at_zero - 1.0;
    for (std::size_t i = 0; i <= kScanIntervals && scan_node(i) < wstar; ++i) {
      min_excess = std::min(min_excess, values[i] - 1.0);
    }
  }

  double max_slope_above = nan;
  if (!std::isnan(wstar)) {
    max_slope_above = f.derivative(wstar, 1);
    for (std::size_t i = 0; i < kScanIntervals; ++i) {
      const double w = scan_node(i);
      if (w >= wstar) max_slope_above = std::max(max_slope_above, f.derivative(w, 1));
    }
  }

  const bool wstar_inside = !std::isnan(wstar) && wstar > 0.0 && wstar < 1.0;
  out.report = {
      {Condition::PositiveBelowOne, min_below_one > 0.0, min_below_one},
      {Condition::VanishesAtOne, std::abs(f_at_one) <= 1e-14, f_at_one},
      {Condition::SlopeAtOneAboveMinusOne, out.slope_at_one > -1.0, out.slope_at_one},
      {Condition::ValueAtZeroAboveOne, f_at_zero > 1.0, f_at_zero},
      {Condition::IncreasingAtZero, out.slope_at_zero > 0.0, out.slope_at_zero},
      {Condition::AboveOneBelowWstar, wstar_inside && min_excess > 0.0, min_excess},
      {Condition::SingleCrossing, crossings == 1, static_cast<double>(crossings)},
      {Condition::SteepCrossing, !std::isnan(w0) && out.slope_at_w0 < -1.0, out.slope_at_w0},
      {Condition::DecreasingAboveWstar, wstar_inside && max_slope_above < 0.0, max_slope_above},
  };
  return out;
}

EnvelopePair::EnvelopePair(std::vector<double> lower, std::vector<double> upper, double slope_at_one)
    : lower_(std::move(lower)), upper_(std::move(upper)), slope_at_one_(slope_at_one) {
  if (lower_.size() < 2 || lower_.size() != upper_.size()) {
    throw Error(ErrorCode::InvalidArgument, "envelope tables need matching sizes >= 2");
  }
}

double EnvelopePair::interpolate(const std::vector<double>& table, double w) const noexcept {
  if (w <= 0.0) return table.front();
  if (w >= 1.0) return table.back();
  const double t = w * static_cast<double>(table.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(t), table.size() - 2);
  const double frac = t - static_cast<double>(i);
  return table[i] + frac * (table[i + 1] - table[i]);
}

EnvelopePair monotone_envelopes(const ResponseFunction& f, std::size_t n_grid) {
  if (n_grid < 2) throw Error(ErrorCode::InvalidArgument, "envelope grid needs >= 2 points");
  std::vector<double> values(n_grid);
  for (std::size_t i = 0; i < n_grid; ++i) {
    values[i] = f.value(static_cast<double>(i) / static_cast<double>(n_grid - 1));
  }
  std::vector<double> lower(n_grid);
  std::vector<double> upper(n_grid);
  lower[0] = values[0];
  for (std::size_t i = 1; i < n_grid; ++i) lower[i] = std::min(lower[i - 1], values[i]);
  upper[n_grid - 1] = values[n_grid - 1];
  for (std::size_t i = n_grid - 1; i-- > 0;) upper[i] = std::max(upper[i + 1], values[i]);
  return EnvelopePair(std::move(lower), std::move(upper), f.derivative(1.0, 1));
}

}  // namespace delaywave
