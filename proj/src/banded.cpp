#include "delaywave/banded.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "delaywave/error.hpp"

namespace delaywave {

BandMatrix::BandMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), width_(2 * kl + ku + 1), data_(n * (2 * kl + ku + 1), 0.0) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "band matrix must be non-empty");
}

double BandMatrix::get(std::size_t i, std::size_t j) const noexcept {
  return in_band(i, j) ? slot(i, j) : 0.0;
}

void BandMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_ || !in_band(i, j)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("entry ({}, {}) outside the band", i, j));
  }
  slot(i, j) = value;
}

void BandMatrix::add(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_ || !in_band(i, j)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("entry ({}, {}) outside the band", i, j));
  }
  slot(i, j) += value;
}

void BandMatrix::clear_row(std::size_t i) noexcept {
  std::fill_n(data_.begin() + static_cast<std::ptrdiff_t>(i * width_), width_, 0.0);
}

std::vector<double> BandMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw Error(ErrorCode::InvalidArgument, "band multiply: size mismatch");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > kl_ ? i - kl_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + ku_);
    double sum = 0.0;
    for (std::size_t j = j0; j <= j1; ++j) sum += slot(i, j) * x[j];
    y[i] = sum;
  }
  return y;
}

BandLU::BandLU(BandMatrix matrix) : lu_(std::move(matrix)), pivots_(lu_.n_) {
  const std::size_t n = lu_.n_;
  const std::size_t kl = lu_.kl_;
  const std::size_t reach = lu_.ku_ + kl;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t last_row = std::min(n - 1, k + kl);
    const std::size_t last_col = std::min(n - 1, k + reach);
    std::size_t p = k;
    double best = std::abs(lu_.slot(k, k));
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      const double candidate = std::abs(lu_.slot(i, k));
      if (candidate > best) {
        best = candidate;
        p = i;
      }
    }
    pivots_[k] = p;
    if (best == 0.0 || !std::isfinite(best)) {
      throw Error(ErrorCode::SingularJacobian, fmt::format("zero pivot in column {}", k));
    }
    if (p != k) {
      for (std::size_t j = k; j <= last_col; ++j) std::swap(lu_.slot(k, j), lu_.slot(p, j));
    }
    const double pivot = lu_.slot(k, k);
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      const double l = lu_.slot(i, k) / pivot;
      lu_.slot(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j <= last_col; ++j) lu_.slot(i, j) -= l * lu_.slot(k, j);
    }
  }
}

void BandLU::solve_in_place(std::span<double> b) const {
  const std::size_t n = lu_.n_;
  if (b.size() != n) throw Error(ErrorCode::InvalidArgument, "band solve: size mismatch");
  const std::size_t kl = lu_.kl_;
  const std::size_t reach = lu_.ku_ + kl;
  for (std::size_t k = 0; k < n; ++k) {
    if (pivots_[k] != k) std::swap(b[k], b[pivots_[k]]);
    const double bk = b[k];
    if (bk == 0.0) continue;
    const std::size_t last_row = std::min(n - 1, k + kl);
    for (std::size_t i = k + 1; i <= last_row; ++i) b[i] -= lu_.slot(i, k) * bk;
  }
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t last_col = std::min(n - 1, i + reach);
    double sum = b[i];
    for (std::size_t j = i + 1; j <= last_col; ++j) sum -= lu_.slot(i, j) * b[j];
    b[i] = sum / lu_.slot(i, i);
  }
}

std::vector<double> BandLU::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

TridiagonalSolver::TridiagonalSolver(std::vector<double> sub, std::vector<double> diag,
                                     std::vector<double> super)
    : sub_(std::move(sub)), diag_(std::move(diag)), super_(std::move(super)) {
  const std::size_t n = diag_.size();
  if (n == 0 || sub_.size() != n || super_.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "tridiagonal bands must have equal, nonzero length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) diag_[i] -= sub_[i] * super_[i - 1];
    if (diag_[i] == 0.0) throw Error(ErrorCode::SingularJacobian, "zero pivot in tridiagonal solve");
    super_[i] /= diag_[i];
  }
}

void TridiagonalSolver::solve_in_place(std::span<double> rhs) const {
  const std::size_t n = diag_.size();
  if (rhs.size() != n) throw Error(ErrorCode::InvalidArgument, "tridiagonal solve: size mismatch");
  rhs[0] /= diag_[0];
  for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - sub_[i] * rhs[i - 1]) / diag_[i];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= super_[i] * rhs[i + 1];
}

}  // namespace delaywave
