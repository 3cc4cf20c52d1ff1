#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "delaywave/cutoff.hpp"

namespace delaywave {

/// Discrete Holder seminorm max |v_{i+k} - v_i| / (k h)^alpha over the dyadic
/// separations k = 1, 2, 4, ..., 2^max_level.
double holder_seminorm(std::span<const double> values, double h, double alpha,
                       int max_level = 10);

struct WeightedNorm {
  double sup_p = 0.0;
  double sup_dp = 0.0;
  double sup_d2p = 0.0;
  double holder_d2p = 0.0;
  double total = 0.0;
};

/// |p| + |p'| + |p''| + [p'']_alpha for p = mu u, mu = 1 + x^2, u = w - psi.
/// Derivatives of w come from fourth-order central differences (w = 1 / 0
/// beyond the grid); those of psi and mu are exact. Differencing psi itself
/// would smear the jumps of psi''' and make [p'']_alpha grid dependent.
WeightedNorm weighted_norm(std::span<const double> u, const Grid& grid, double alpha = 0.5);

/// Fourth-order first and second differences of v, extended beyond the grid
/// by the constants `left` and `right`.
std::vector<double> first_difference(std::span<const double> v, double h, double left,
                                     double right);
std::vector<double> second_difference(std::span<const double> v, double h, double left,
                                      double right);

struct LineFit {
  double slope;
  double intercept;
  double slope_stderr;
  std::size_t points;
};

/// Ordinary least squares y = slope x + intercept. Needs at least 3 points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace delaywave
