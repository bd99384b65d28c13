#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

#include "sqz/gaussian_state.hpp"

namespace sqz {

using Rng = std::mt19937_64;

/// One homodyne reading of the quadrature x cos(angle) + p sin(angle).
/// The angle is stored reduced to [0, pi); reducing by an odd multiple of pi
/// flips the sign of the value.
struct HomodyneOutcome {
  double value = 0.0;
  double angle = 0.0;
  std::size_t mode = 0;
};

HomodyneOutcome make_outcome(double value, double angle, std::size_t mode);

/// Prior distribution of a homodyne reading: Gaussian with this mean/variance.
struct QuadratureMarginal {
  double mean = 0.0;
  double variance = 0.0;
};

QuadratureMarginal homodyne_marginal(const GaussianState& state, std::size_t mode, double angle);

/// State of the remaining modes after reading `outcome` on `mode`. The
/// conditioned covariance is the Schur complement with respect to the
/// measured quadrature and does not depend on the outcome. Requires at least
/// two modes; throws InvariantError when the measured variance is not
/// positive.
GaussianState homodyne_condition(const GaussianState& state, std::size_t mode, double angle, double outcome);

struct HomodyneSample {
  HomodyneOutcome outcome;
  /// Conditioned remainder; empty for single-mode input.
  std::optional<GaussianState> remainder;
};

HomodyneSample homodyne_sample(const GaussianState& state, std::size_t mode, double angle, Rng& rng);
HomodyneSample homodyne_sample(const GaussianState& state, std::size_t mode, double angle, std::uint64_t seed);

/// Homodyne measurement whose reading (plus independent Gaussian readout
/// noise) displaces `target_mode` by gain * reading.
struct Feedforward {
  std::size_t measured_mode = 1;
  double angle = 0.0;
  std::size_t target_mode = 0;
  Vector2 gain = Vector2::Zero();
  double readout_noise_variance = 0.0;
};

/// Ensemble (outcome-averaged) state of the unmeasured modes after
/// measurement and feedforward. Mode order of the remainder follows the
/// input with the measured mode removed.
GaussianState feed_forward(const GaussianState& state, const Feedforward& ff);

/// Single shot: condition on `measured_value` and displace by
/// gain * (measured_value + readout_noise).
GaussianState feed_forward_shot(const GaussianState& state, const Feedforward& ff, double measured_value,
                                double readout_noise);

/// Index of `mode` in the remainder after removing `measured_mode`.
std::size_t remainder_index(std::size_t mode, std::size_t measured_mode);

}  // namespace sqz
