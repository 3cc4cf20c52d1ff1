#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace delaywave {

/// Square band matrix with kl sub- and ku super-diagonals.
///
/// Storage is row-major in a band of width 2*kl + ku + 1 so that an LU
/// factorization with partial pivoting fits in place (fill-in raises the
/// upper bandwidth to ku + kl).
class BandMatrix {
 public:
  BandMatrix(std::size_t n, std::size_t kl, std::size_t ku);

  std::size_t size() const noexcept { return n_; }
  std::size_t lower_bandwidth() const noexcept { return kl_; }
  std::size_t upper_bandwidth() const noexcept { return ku_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept {
    return j + kl_ >= i && j <= i + ku_;
  }

  /// Zero outside the band.
  double get(std::size_t i, std::size_t j) const noexcept;
  void set(std::size_t i, std::size_t j, double value);
  void add(std::size_t i, std::size_t j, double value);
  void clear_row(std::size_t i) noexcept;

  std::vector<double> multiply(std::span<const double> x) const;

 private:
  friend class BandLU;

  double& slot(std::size_t i, std::size_t j) noexcept { return data_[i * width_ + (j + kl_ - i)]; }
  double slot(std::size_t i, std::size_t j) const noexcept {
    return data_[i * width_ + (j + kl_ - i)];
  }

  std::size_t n_;
  std::size_t kl_;
  std::size_t ku_;
  std::size_t width_;
  std::vector<double> data_;
};

/// LU factorization with partial pivoting of a BandMatrix.
/// Throws Error(SingularJacobian) on a zero pivot.
class BandLU {
 public:
  explicit BandLU(BandMatrix matrix);

  std::size_t size() const noexcept { return lu_.n_; }
  void solve_in_place(std::span<double> rhs) const;
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  BandMatrix lu_;
  std::vector<std::size_t> pivots_;
};

/// Thomas algorithm for a constant tridiagonal matrix, factored once.
/// Row i reads sub[i] x[i-1] + diag[i] x[i] + super[i] x[i+1]; sub[0] and
/// super[n-1] are ignored. No pivoting: the matrix must be diagonally dominant.
class TridiagonalSolver {
 public:
  TridiagonalSolver(std::vector<double> sub, std::vector<double> diag, std::vector<double> super);

  std::size_t size() const noexcept { return diag_.size(); }
  void solve_in_place(std::span<double> rhs) const;

 private:
  std::vector<double> sub_;
  std::vector<double> diag_;      // eliminated pivots
  std::vector<double> super_;
};

}  // namespace delaywave
