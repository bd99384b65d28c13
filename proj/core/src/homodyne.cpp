#include "sqz/homodyne.hpp"

#include <cmath>
#include <vector>

namespace sqz {
namespace {

struct Partition {
  std::vector<Eigen::Index> kept;
  Vector direction;  // full-length unit vector of the measured quadrature
};

Partition partition(const GaussianState& state, std::size_t mode, double angle) {
  if (mode >= state.n_modes()) throw std::out_of_range("homodyne: mode index out of range");
  Partition p;
  const auto n = static_cast<Eigen::Index>(2 * state.n_modes());
  p.direction = Vector::Zero(n);
  const auto i = static_cast<Eigen::Index>(2 * mode);
  p.direction(i) = std::cos(angle);
  p.direction(i + 1) = std::sin(angle);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k != i && k != i + 1) p.kept.push_back(k);
  }
  return p;
}

struct Regression {
  QuadratureMarginal prior;
  Vector kept_mean;
  Matrix conditioned_cov;
  Vector slope;  // d(kept mean)/d(outcome)
};

Regression regress(const GaussianState& state, std::size_t mode, double angle) {
  if (state.n_modes() < 2) {
    throw std::invalid_argument("homodyne conditioning needs at least two modes");
  }
  const Partition p = partition(state, mode, angle);
  Regression r;
  r.prior.mean = p.direction.dot(state.mean());
  r.prior.variance = p.direction.dot(state.cov() * p.direction);
  if (!(r.prior.variance > 0.0)) {
    throw InvariantError("measured quadrature variance is not positive");
  }
  const Vector cross = state.cov()(p.kept, Eigen::all) * p.direction;
  r.kept_mean = state.mean()(p.kept);
  r.slope = cross / r.prior.variance;
  r.conditioned_cov = state.cov()(p.kept, p.kept) - cross * cross.transpose() / r.prior.variance;
  return r;
}

Vector gain_vector(const Feedforward& ff, Eigen::Index kept_size) {
  Vector g = Vector::Zero(kept_size);
  const auto t = static_cast<Eigen::Index>(2 * remainder_index(ff.target_mode, ff.measured_mode));
  if (t + 2 > kept_size) throw std::out_of_range("feedforward target mode out of range");
  g.segment(t, 2) = ff.gain;
  return g;
}

}  // namespace

HomodyneOutcome make_outcome(double value, double angle, std::size_t mode) {
  const double turns = std::floor(angle / kPi);
  double reduced = angle - turns * kPi;
  if (reduced >= kPi) reduced -= kPi;
  if (reduced < 0.0) reduced = 0.0;
  const bool odd = std::fmod(std::abs(turns), 2.0) == 1.0;
  return HomodyneOutcome{odd ? -value : value, reduced, mode};
}

QuadratureMarginal homodyne_marginal(const GaussianState& state, std::size_t mode, double angle) {
  return {marginal_mean(state, mode, angle), marginal_variance(state, mode, angle)};
}

GaussianState homodyne_condition(const GaussianState& state, std::size_t mode, double angle, double outcome) {
  const Regression r = regress(state, mode, angle);
  return GaussianState(r.kept_mean + r.slope * (outcome - r.prior.mean), r.conditioned_cov);
}

HomodyneSample homodyne_sample(const GaussianState& state, std::size_t mode, double angle, Rng& rng) {
  const QuadratureMarginal prior = homodyne_marginal(state, mode, angle);
  if (!(prior.variance > 0.0)) throw InvariantError("measured quadrature variance is not positive");
  std::normal_distribution<double> normal(prior.mean, std::sqrt(prior.variance));
  const double value = normal(rng);
  HomodyneSample out{make_outcome(value, angle, mode), std::nullopt};
  if (state.n_modes() > 1) out.remainder = homodyne_condition(state, mode, angle, value);
  return out;
}

HomodyneSample homodyne_sample(const GaussianState& state, std::size_t mode, double angle, std::uint64_t seed) {
  Rng rng(seed);
  return homodyne_sample(state, mode, angle, rng);
}

GaussianState feed_forward(const GaussianState& state, const Feedforward& ff) {
  if (!(ff.readout_noise_variance >= 0.0)) throw std::invalid_argument("readout noise variance must be >= 0");
  const Regression r = regress(state, ff.measured_mode, ff.angle);
  const Vector g = gain_vector(ff, r.kept_mean.size());
  const Vector total = r.slope + g;
  Matrix cov = r.conditioned_cov + total * total.transpose() * r.prior.variance +
               g * g.transpose() * ff.readout_noise_variance;
  return GaussianState(r.kept_mean + g * r.prior.mean, symmetrized(cov));
}

GaussianState feed_forward_shot(const GaussianState& state, const Feedforward& ff, double measured_value,
                                double readout_noise) {
  const Regression r = regress(state, ff.measured_mode, ff.angle);
  const Vector g = gain_vector(ff, r.kept_mean.size());
  return GaussianState(r.kept_mean + r.slope * (measured_value - r.prior.mean) + g * (measured_value + readout_noise),
                       r.conditioned_cov);
}

std::size_t remainder_index(std::size_t mode, std::size_t measured_mode) {
  if (mode == measured_mode) throw std::invalid_argument("feedforward target cannot be the measured mode");
  return mode < measured_mode ? mode : mode - 1;
}

}  // namespace sqz
