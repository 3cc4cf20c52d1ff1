#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace delaywave {

/// Response nonlinearity f(w) = kappa (1 - w) + (1 - w)^2 (a + b w).
///
/// Internally the polynomial is kept in the complement variable s = 1 - w,
/// f = kappa s + (a + b) s^2 - b s^3, so that values near the state w = 1
/// keep full relative precision when callers pass s directly.
class ResponseFunction {
 public:
  /// No admissibility checks; use make_family() for validated parameters.
  static ResponseFunction polynomial(double kappa, double a, double b) noexcept;

  double kappa() const noexcept { return kappa_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  double value(double w) const noexcept { return value_at_complement(1.0 - w); }

  /// d^order f / dw^order for order in 0..4; higher orders vanish.
  double derivative(double w, int order) const noexcept;

  /// f(1 - s).
  double value_at_complement(double s) const noexcept;
  /// f'(1 - s).
  double slope_at_complement(double s) const noexcept;

 private:
  ResponseFunction(double kappa, double a, double b) noexcept : kappa_(kappa), a_(a), b_(b) {}

  double kappa_;
  double a_;
  double b_;
};

/// Validated family constructor. Throws Error(InvalidArgument) unless
/// 0 <= kappa < 1, a > 0, kappa + a > 1 (f(0) > 1) and b > kappa + 2a (f'(0) > 0).
ResponseFunction make_family(double kappa, double a, double b);

/// F(w) = w (1 - w - f(w)).
double reaction(const ResponseFunction& f, double w) noexcept;

enum class Condition {
  PositiveBelowOne,       // f > 0 on [0, 1)
  VanishesAtOne,          // f(1) = 0
  SlopeAtOneAboveMinusOne,
  ValueAtZeroAboveOne,
  IncreasingAtZero,       // f'(0) > 0
  AboveOneBelowWstar,     // f > 1 on [0, w*), w* in (0, 1)
  SingleCrossing,         // f(w) = 1 - w has exactly one root w0 in (0, 1)
  SteepCrossing,          // f'(w0) < -1
  DecreasingAboveWstar,   // f' < 0 on [w*, 1)
};

std::string_view condition_name(Condition condition) noexcept;

struct ConditionCheck {
  Condition condition;
  bool passed;
  /// The quantity the verdict was read from (a minimum, a slope, a root count, ...).
  double witness;
};

struct BistableStructure {
  double w0 = 0.0;
  double wstar = 0.0;
  double f0_breakpoint = 0.0;  ///< largest w on which the lower envelope stays at f(0)
  double f1_breakpoint = 0.0;  ///< argmax of f on [0, 1]
  double slope_at_zero = 0.0;
  double slope_at_one = 0.0;
  double slope_at_w0 = 0.0;
  std::vector<ConditionCheck> report;

  bool all_passed() const noexcept;
  const ConditionCheck& check(Condition condition) const;
};

/// Locates the landmarks of f and evaluates every admissibility condition.
/// Failing conditions are recorded, never thrown.
BistableStructure characterize(const ResponseFunction& f);

enum class EnvelopeSide { Lower, Upper };

/// Nonincreasing envelopes f0 <= f <= f1 tabulated on a uniform grid of [0, 1]:
/// f0(w) = min over [0, w] of f, f1(w) = max over [w, 1] of f.
/// Between nodes the tables are interpolated linearly; outside [0, 1] they are
/// extended by their end values.
class EnvelopePair {
 public:
  EnvelopePair(std::vector<double> lower, std::vector<double> upper, double slope_at_one);

  double lower(double w) const noexcept { return interpolate(lower_, w); }
  double upper(double w) const noexcept { return interpolate(upper_, w); }
  double value(EnvelopeSide side, double w) const noexcept {
    return side == EnvelopeSide::Lower ? lower(w) : upper(w);
  }

  std::size_t size() const noexcept { return lower_.size(); }
  double node(std::size_t i) const noexcept {
    return static_cast<double>(i) / static_cast<double>(lower_.size() - 1);
  }
  std::span<const double> lower_table() const noexcept { return lower_; }
  std::span<const double> upper_table() const noexcept { return upper_; }

  /// f'(1) of the source function; both envelopes coincide with f near w = 1.
  double slope_at_one() const noexcept { return slope_at_one_; }

 private:
  double interpolate(const std::vector<double>& table, double w) const noexcept;

  std::vector<double> lower_;
  std::vector<double> upper_;
  double slope_at_one_;
};

EnvelopePair monotone_envelopes(const ResponseFunction& f, std::size_t n_grid = 4097);

}  // namespace delaywave
