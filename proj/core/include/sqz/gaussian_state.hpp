#pragma once

#include <cstddef>
#include <span>

#include "sqz/types.hpp"

namespace sqz {

/// Mean vector and covariance matrix of an N-mode Gaussian state.
///
/// Quadratures are ordered (x1, p1, x2, p2, ...). The vacuum has zero mean
/// and covariance kVacuumVariance * I. Instances are immutable; every
/// constructor validates symmetry and the uncertainty relation and throws
/// InvariantError on violation.
class GaussianState {
 public:
  GaussianState(Vector mean, Matrix cov);

  std::size_t n_modes() const { return n_modes_; }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }

  /// Mean (x, p) of one mode.
  Vector2 mode_mean(std::size_t mode) const;
  /// 2x2 covariance block of one mode.
  Matrix2 mode_cov(std::size_t mode) const;

  /// Symplectic eigenvalues, ascending. All are >= 1/4 for a physical state.
  Vector symplectic_eigenvalues() const;

  /// det(4 cov); equals 1 for pure states and exceeds 1 for mixed ones.
  double purity_determinant() const;

 private:
  std::size_t n_modes_;
  Vector mean_;
  Matrix cov_;
};

/// Standard symplectic form for n modes in (x1, p1, ...) ordering.
Matrix symplectic_form(std::size_t n_modes);

/// Symmetric part (C + C^T) / 2.
Matrix symmetrized(const Matrix& cov);

GaussianState make_vacuum(std::size_t n_modes = 1);
GaussianState make_coherent(double mean_x, double mean_p);

/// Squeezed vacuum with quadrature variance e^{-2r}/4 along `angle` and
/// e^{+2r}/4 along angle + pi/2. angle = 0 squeezes x.
GaussianState make_squeezed_vacuum(double r, double angle = 0.0);

/// Single-mode thermal state with quadrature variance `variance` (>= 1/4).
GaussianState make_thermal(double variance);

/// Tensor product; modes of `a` come first.
GaussianState tensor(const GaussianState& a, const GaussianState& b);

/// Variance of the quadrature x cos(angle) + p sin(angle) on `mode`.
double marginal_variance(const GaussianState& state, std::size_t mode, double angle);

/// Mean of the quadrature x cos(angle) + p sin(angle) on `mode`.
double marginal_mean(const GaussianState& state, std::size_t mode, double angle);

/// Reduced state on `keep` (in the given order). Indices must be distinct and
/// in range.
GaussianState partial_trace(const GaussianState& state, std::span<const std::size_t> keep);

}  // namespace sqz
