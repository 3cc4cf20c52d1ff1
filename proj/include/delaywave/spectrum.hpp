#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include "delaywave/nonlinearity.hpp"

namespace delaywave {

/// Essential-spectrum curves of the linearizations at the two limit states:
///   lambda_+(xi) = -xi^2 + i c xi + 1 - f(0)                 (state 0, x -> +inf)
///   lambda_-(xi) = -xi^2 + i c xi - 1 - f'(1) e^{i c tau xi} (state 1, x -> -inf)
struct SpectrumReport {
  double c = 0.0;
  double tau = 0.0;
  std::vector<double> xi;
  std::vector<std::complex<double>> plus;
  std::vector<std::complex<double>> minus;
  double max_re_plus = 0.0;
  double max_re_minus = 0.0;
  bool ns = false;      ///< both maxima negative
  double margin = 0.0;  ///< -max(max_re_plus, max_re_minus)
};

SpectrumReport essential_curves(const ResponseFunction& f, double c, double tau,
                                double xi_max = 20.0, std::size_t n_xi = 4001);

struct NsVerdict {
  bool satisfied;
  double margin;
};

NsVerdict condition_ns(const ResponseFunction& f, double c, double tau);

enum class TailSide {
  Plus,   ///< w -> 0 as x -> +inf
  Minus,  ///< w -> 1 as x -> -inf
};

std::string_view tail_side_name(TailSide side) noexcept;

struct CharacteristicRoots {
  TailSide side;
  /// Plus: both real roots of z^2 + c z + 1 - f(0) = 0, ascending.
  /// Minus: the positive root of z^2 + c z - 1 - f'(1) e^{c tau z} = 0.
  std::vector<double> roots;
  double residual;  ///< max |characteristic function| over the returned roots

  /// Predicted exponential rate of the tail: -roots[0] on the plus side,
  /// roots[0] on the minus side.
  double decay_rate() const;
};

/// Throws Error(RootNotFound) if the minus-side root is not in (0, 10].
CharacteristicRoots characteristic_roots(const ResponseFunction& f, double c, double tau,
                                         TailSide side);

/// min over sampled real y of |(iy)^2 + c i y - 1| - |f'(1)|; positive means the
/// minus-side characteristic equation has no purely imaginary solutions there.
double imaginary_axis_gap(const ResponseFunction& f, double c, double y_max = 50.0,
                          std::size_t n = 20001);

}  // namespace delaywave
