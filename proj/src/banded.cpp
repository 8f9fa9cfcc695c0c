#include "lubrisim/banded.hpp"

#include "lubrisim/errors.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace lubrisim {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper, bool cyclic)
    : n_(n), kl_(lower), ku_(upper), cyclic_(cyclic) {
  if (n == 0) throw DomainError("banded matrix must be non-empty");
  // a band that covers every diagonal needs no wraparound
  if (kl_ + ku_ + 1 >= n_) {
    kl_ = n_ - 1;
    ku_ = n_ - 1;
    cyclic_ = false;
  }
  kl_ = std::min(kl_, n_ - 1);
  ku_ = std::min(ku_, n_ - 1);
  data_.assign(n_ * (kl_ + ku_ + 1), 0.0);
}

long BandedMatrix::offset(std::size_t row, std::size_t col) const noexcept {
  long d = static_cast<long>(col) - static_cast<long>(row);
  if (cyclic_) {
    const long n = static_cast<long>(n_);
    if (d > static_cast<long>(ku_)) d -= n;
    else if (d < -static_cast<long>(kl_)) d += n;
  }
  return d;
}

bool BandedMatrix::in_band(std::size_t row, std::size_t col) const noexcept {
  if (row >= n_ || col >= n_) return false;
  const long d = offset(row, col);
  return d >= -static_cast<long>(kl_) && d <= static_cast<long>(ku_);
}

double& BandedMatrix::operator()(std::size_t row, std::size_t col) {
  if (!in_band(row, col))
    throw DomainError(fmt::format("entry ({}, {}) lies outside the band", row, col));
  return data_[row * (kl_ + ku_ + 1) + static_cast<std::size_t>(offset(row, col) + static_cast<long>(kl_))];
}

double BandedMatrix::operator()(std::size_t row, std::size_t col) const {
  if (!in_band(row, col)) return 0.0;
  return data_[row * (kl_ + ku_ + 1) + static_cast<std::size_t>(offset(row, col) + static_cast<long>(kl_))];
}

void BandedMatrix::add_to_diagonal(double value) {
  for (std::size_t i = 0; i < n_; ++i) (*this)(i, i) += value;
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw DomainError("banded multiply: size mismatch");
  std::vector<double> y(n_, 0.0);
  const long n = static_cast<long>(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (long d = -static_cast<long>(kl_); d <= static_cast<long>(ku_); ++d) {
      long c = static_cast<long>(r) + d;
      if (cyclic_) c = (c % n + n) % n;
      else if (c < 0 || c >= n) continue;
      y[r] += (*this)(r, static_cast<std::size_t>(c)) * x[static_cast<std::size_t>(c)];
    }
  }
  return y;
}

std::vector<double> BandedMatrix::to_dense() const {
  std::vector<double> dense(n_ * n_, 0.0);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) dense[r * n_ + c] = (*this)(r, c);
  return dense;
}

std::vector<double> BandedMatrix::solve(std::span<const double> b) const {
  if (b.size() != n_) throw DomainError("banded solve: size mismatch");
  return cyclic_ ? solve_cyclic(b) : solve_band(b);
}

std::vector<double> BandedMatrix::solve_band(std::span<const double> b) const {
  const std::size_t n = n_, kl = kl_, ku = ku_;
  // pivoting widens the upper band to kl + ku
  const std::size_t width = 2 * kl + ku + 1;
  std::vector<double> lu(n * width, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return lu[r * width + (c + kl - r)]; };
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t c0 = r > kl ? r - kl : 0;
    const std::size_t c1 = std::min(n - 1, r + ku);
    for (std::size_t c = c0; c <= c1; ++c) at(r, c) = (*this)(r, c);
  }

  std::vector<double> x(b.begin(), b.end());
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t last_row = std::min(n - 1, k + kl);
    const std::size_t last_col = std::min(n - 1, k + kl + ku);
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r <= last_row; ++r)
      if (std::abs(at(r, k)) > std::abs(at(pivot, k))) pivot = r;
    if (at(pivot, k) == 0.0 || !std::isfinite(at(pivot, k)))
      throw LinearAlgebraError(fmt::format("banded matrix is singular at column {}", k));
    if (pivot != k) {
      for (std::size_t c = k; c <= last_col; ++c) std::swap(at(k, c), at(pivot, c));
      std::swap(x[k], x[pivot]);
    }
    const double inv_pivot = 1.0 / at(k, k);
    for (std::size_t r = k + 1; r <= last_row; ++r) {
      const double l = at(r, k) * inv_pivot;
      if (l == 0.0) continue;
      at(r, k) = 0.0;
      for (std::size_t c = k + 1; c <= last_col; ++c) at(r, c) -= l * at(k, c);
      x[r] -= l * x[k];
    }
  }

  for (std::size_t k = n; k-- > 0;) {
    const std::size_t last_col = std::min(n - 1, k + kl + ku);
    double acc = x[k];
    for (std::size_t c = k + 1; c <= last_col; ++c) acc -= at(k, c) * x[c];
    x[k] = acc / at(k, k);
    if (!std::isfinite(x[k])) throw LinearAlgebraError("banded solve produced a non-finite value");
  }
  return x;
}

std::vector<double> BandedMatrix::solve_cyclic(std::span<const double> b) const {
  using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor>;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(data_.size());
  const long n = static_cast<long>(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (long d = -static_cast<long>(kl_); d <= static_cast<long>(ku_); ++d) {
      const long c = ((static_cast<long>(r) + d) % n + n) % n;
      const double v = (*this)(r, static_cast<std::size_t>(c));
      if (v != 0.0) triplets.emplace_back(static_cast<int>(r), static_cast<int>(c), v);
    }
  }
  SpMat a(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  a.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::SparseLU<SpMat> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success)
    throw LinearAlgebraError("cyclic banded matrix is singular: " + lu.lastErrorMessage());
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
  const Eigen::VectorXd sol = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !sol.allFinite())
    throw LinearAlgebraError("cyclic banded solve failed");
  return {sol.data(), sol.data() + sol.size()};
}

} // namespace lubrisim
