#include "sqz/channels.hpp"

#include <cmath>

namespace sqz {

GaussianState apply_loss(const GaussianState& state, std::size_t mode, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("loss efficiency must lie in [0, 1]");
  if (mode >= state.n_modes()) throw std::out_of_range("apply_loss: mode index out of range");
  const auto n = static_cast<Eigen::Index>(2 * state.n_modes());
  const auto i = static_cast<Eigen::Index>(2 * mode);

  Vector scale = Vector::Ones(n);
  scale.segment(i, 2).setConstant(std::sqrt(eta));
  Vector mean = state.mean().cwiseProduct(scale);
  Matrix cov = scale.asDiagonal() * state.cov() * scale.asDiagonal();
  cov.block(i, i, 2, 2) += (1.0 - eta) * kVacuumVariance * Matrix::Identity(2, 2);
  return GaussianState(std::move(mean), symmetrized(cov));
}

GaussianState add_noise(const GaussianState& state, std::size_t mode, double variance) {
  if (!(variance >= 0.0)) throw std::invalid_argument("added noise variance must be non-negative");
  if (mode >= state.n_modes()) throw std::out_of_range("add_noise: mode index out of range");
  const auto i = static_cast<Eigen::Index>(2 * mode);
  Matrix cov = state.cov();
  cov.block(i, i, 2, 2) += variance * Matrix::Identity(2, 2);
  return GaussianState(state.mean(), std::move(cov));
}

}  // namespace sqz
