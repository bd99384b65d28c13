#include "sqz/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace sqz {
namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kUncertaintyTolerance = 1e-9;

void check_finite(const Vector& mean, const Matrix& cov) {
  if (!mean.allFinite() || !cov.allFinite()) {
    throw InvariantError("Gaussian state has non-finite moments");
  }
}

}  // namespace

GaussianState::GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (mean_.size() == 0 || mean_.size() % 2 != 0) {
    throw std::invalid_argument("mean vector must have positive even length, got " +
                                std::to_string(mean_.size()));
  }
  if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
    throw std::invalid_argument("covariance must be square and match the mean length");
  }
  check_finite(mean_, cov_);
  n_modes_ = static_cast<std::size_t>(mean_.size() / 2);

  const double scale = std::max(cov_.cwiseAbs().maxCoeff(), kVacuumVariance);
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
    throw InvariantError("covariance matrix is not symmetric");
  }
  cov_ = symmetrized(cov_);

  const Vector nu = symplectic_eigenvalues();
  if (nu(0) < kVacuumVariance - kUncertaintyTolerance * std::max(1.0, scale)) {
    throw InvariantError("covariance violates the uncertainty relation (smallest symplectic eigenvalue " +
                         std::to_string(nu(0)) + " < 1/4)");
  }
  Eigen::LLT<Matrix> llt(cov_);
  if (llt.info() != Eigen::Success) {
    throw InvariantError("covariance matrix is not positive definite");
  }
}

Vector2 GaussianState::mode_mean(std::size_t mode) const {
  if (mode >= n_modes_) throw std::out_of_range("mode index out of range");
  return mean_.segment<2>(static_cast<Eigen::Index>(2 * mode));
}

Matrix2 GaussianState::mode_cov(std::size_t mode) const {
  if (mode >= n_modes_) throw std::out_of_range("mode index out of range");
  const auto i = static_cast<Eigen::Index>(2 * mode);
  return cov_.block<2, 2>(i, i);
}

Vector GaussianState::symplectic_eigenvalues() const {
  // Eigenvalues of Omega * cov come in pairs +-i nu.
  const Matrix m = symplectic_form(n_modes_) * cov_;
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    values.push_back(std::abs(solver.eigenvalues()(i).imag()));
  }
  std::sort(values.begin(), values.end());
  Vector nu(static_cast<Eigen::Index>(n_modes_));
  for (std::size_t k = 0; k < n_modes_; ++k) {
    nu(static_cast<Eigen::Index>(k)) = 0.5 * (values[2 * k] + values[2 * k + 1]);
  }
  return nu;
}

double GaussianState::purity_determinant() const { return (4.0 * cov_).determinant(); }

Matrix symplectic_form(std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(2 * n_modes);
  Matrix omega = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; k += 2) {
    omega(k, k + 1) = 1.0;
    omega(k + 1, k) = -1.0;
  }
  return omega;
}

Matrix symmetrized(const Matrix& cov) { return 0.5 * (cov + cov.transpose()); }

GaussianState make_vacuum(std::size_t n_modes) {
  if (n_modes == 0) throw std::invalid_argument("n_modes must be >= 1");
  const auto n = static_cast<Eigen::Index>(2 * n_modes);
  return GaussianState(Vector::Zero(n), kVacuumVariance * Matrix::Identity(n, n));
}

GaussianState make_coherent(double mean_x, double mean_p) {
  return GaussianState(Vector2(mean_x, mean_p), kVacuumVariance * Matrix::Identity(2, 2));
}

GaussianState make_squeezed_vacuum(double r, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix2 rot;
  rot << c, -s, s, c;
  const Matrix2 diag = Vector2(kVacuumVariance * std::exp(-2.0 * r), kVacuumVariance * std::exp(2.0 * r)).asDiagonal();
  return GaussianState(Vector::Zero(2), rot * diag * rot.transpose());
}

GaussianState make_thermal(double variance) {
  if (!(variance >= kVacuumVariance)) throw std::invalid_argument("thermal variance must be >= 1/4");
  return GaussianState(Vector::Zero(2), variance * Matrix::Identity(2, 2));
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const Eigen::Index na = a.mean().size();
  const Eigen::Index nb = b.mean().size();
  Vector mean(na + nb);
  mean << a.mean(), b.mean();
  Matrix cov = Matrix::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return GaussianState(std::move(mean), std::move(cov));
}

double marginal_variance(const GaussianState& state, std::size_t mode, double angle) {
  const Vector2 u(std::cos(angle), std::sin(angle));
  return u.dot(state.mode_cov(mode) * u);
}

double marginal_mean(const GaussianState& state, std::size_t mode, double angle) {
  const Vector2 u(std::cos(angle), std::sin(angle));
  return u.dot(state.mode_mean(mode));
}

GaussianState partial_trace(const GaussianState& state, std::span<const std::size_t> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace needs at least one mode to keep");
  std::vector<bool> seen(state.n_modes(), false);
  std::vector<Eigen::Index> idx;
  idx.reserve(2 * keep.size());
  for (std::size_t m : keep) {
    if (m >= state.n_modes()) throw std::out_of_range("partial_trace: mode index out of range");
    if (seen[m]) throw std::invalid_argument("partial_trace: duplicate mode index");
    seen[m] = true;
    idx.push_back(static_cast<Eigen::Index>(2 * m));
    idx.push_back(static_cast<Eigen::Index>(2 * m + 1));
  }
  return GaussianState(state.mean()(idx), state.cov()(idx, idx));
}

}  // namespace sqz
