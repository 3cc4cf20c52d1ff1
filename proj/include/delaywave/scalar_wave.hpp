#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "delaywave/nonlinearity.hpp"

namespace delaywave {

/// A scalar bistable reaction F on [0, 1] with F(0) = F(1) = 0.
///
/// F is stored as a function of the complement q = 1 - w, so that the left
/// tail of a front (w close to 1) is integrated without cancellation.
class Reaction {
 public:
  /// F(w) = w (1 - w - f(w)).
  static Reaction from_response(const ResponseFunction& f);
  /// F(w) = w (1 - w - f_i(w)) for the lower (f0) or upper (f1) envelope of f.
  /// Where the envelope coincides with f the exact polynomial is used.
  static Reaction from_envelope(const ResponseFunction& f, const EnvelopePair& envelopes,
                                EnvelopeSide side);
  /// F(w) = w (1 - w) (w - alpha).
  static Reaction nagumo(double alpha);

  double operator()(double w) const { return at_complement_(1.0 - w); }
  double at_complement(double q) const { return at_complement_(q); }

  double slope_at_zero() const noexcept { return slope_at_zero_; }
  double slope_at_one() const noexcept { return slope_at_one_; }
  const std::string& tag() const noexcept { return tag_; }

  /// Number of sign changes of F on the open interval (0, 1), scanned on a
  /// uniform grid of `intervals` cells.
  int interior_zero_count(std::size_t intervals = 10000) const;

 private:
  Reaction(std::function<double(double)> at_complement, double slope_at_zero, double slope_at_one,
           std::string tag);

  std::function<double(double)> at_complement_;
  double slope_at_zero_;
  double slope_at_one_;
  std::string tag_;
};

struct ShootingOptions {
  double tol_c = 1e-8;
  double c_min = -5.0;
  double c_max = 5.0;
  double eps = 1e-8;        ///< offset from the saddles along the eigendirections
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double max_step = 0.05;
  double horizon = 400.0;   ///< integration length before a shot counts as undecided
  double L = 60.0;
  std::size_t n = 2401;
};

struct ProfilePoint {
  double w;
  double q;   ///< 1 - w, accurate where w is close to 1
  double dw;
};

namespace detail {
struct ShootingBranches;
}

/// Heteroclinic front of w'' + c w' + F(w) = 0 from w = 1 to w = 0 with w(0) = 1/2.
struct NondelayedWave {
  double c = 0.0;
  std::string tag;
  double bracket_width = 0.0;  ///< width of the bisection interval at termination
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> dw;

  /// Profile anywhere on the line (exponential tails beyond the integrated range).
  ProfilePoint at(double x) const;

  std::shared_ptr<const detail::ShootingBranches> branches;
};

/// Phase-plane shooting: bisection on over/undershoot from the saddle at w = 1,
/// then a secant polish on the mismatch of the two stable branches at w = 1/2.
/// Throws Error(NoBracket) if [c_min, c_max] does not bracket the connection.
NondelayedWave solve_nondelayed(const Reaction& F, const ShootingOptions& options = {});

struct SpeedBounds {
  double c0;      ///< speed of the lower-envelope problem
  double c1;      ///< speed of the upper-envelope problem
  double c_star;  ///< max(|c0|, |c1|)
};

/// Speeds of the two envelope problems. Throws Error(EnvelopeDegenerate) if an
/// envelope reaction is not bistable.
SpeedBounds speed_bounds(const ResponseFunction& f, const ShootingOptions& options = {});

}  // namespace delaywave
