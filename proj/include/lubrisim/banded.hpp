#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lubrisim {

/// Square matrix with nonzeros confined to `lower` sub- and `upper`
/// super-diagonals. A cyclic matrix additionally wraps the band around the
/// corners, as produced by periodic meshes.
class BandedMatrix {
public:
  BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper, bool cyclic = false);

  std::size_t size() const noexcept { return n_; }
  std::size_t lower() const noexcept { return kl_; }
  std::size_t upper() const noexcept { return ku_; }
  bool cyclic() const noexcept { return cyclic_; }

  bool in_band(std::size_t row, std::size_t col) const noexcept;

  /// Entry access; throws DomainError outside the band.
  double& operator()(std::size_t row, std::size_t col);
  double operator()(std::size_t row, std::size_t col) const;

  void add_to_diagonal(double value);

  std::vector<double> multiply(std::span<const double> x) const;

  /// Solves A x = b. Band storage uses Gaussian elimination with partial
  /// pivoting restricted to the band; cyclic matrices go through a sparse LU.
  /// Throws LinearAlgebraError when the matrix is singular.
  std::vector<double> solve(std::span<const double> b) const;

  std::vector<double> to_dense() const; ///< row-major n*n copy

private:
  long offset(std::size_t row, std::size_t col) const noexcept;
  std::vector<double> solve_band(std::span<const double> b) const;
  std::vector<double> solve_cyclic(std::span<const double> b) const;

  std::size_t n_;
  std::size_t kl_;
  std::size_t ku_;
  bool cyclic_;
  std::vector<double> data_; // row-major, n rows of (kl + ku + 1) diagonals
};

} // namespace lubrisim
