#pragma once

#include <cstdint>
#include <span>

#include "sqz/gaussian_state.hpp"
#include "sqz/squeezer.hpp"
#include "sqz/wigner.hpp"

namespace sqz {

/// Variance relative to shot noise, in dB: 10 log10(variance / (1/4)).
double noise_power_db(double variance);

/// Exact unitary squeeze of the input moments, (x, p) -> (e^{-r} x, e^{r} p).
/// With r = -ln sqrt(T) this is the target of the feedforward squeezer.
GaussianState ideal_squeezed_target(const GaussianState& input, double r);

/// Overlap of a mixed single-mode Gaussian with a pure one, evaluated in the
/// principal frame of the pure state:
///   F = exp(-dx^2 / (2 Sx) - dp^2 / (2 Sp)) / (2 sqrt(Sx Sp)),
///   Sx = Vx_out + Vx_id, Sp = Vp_out + Vp_id.
struct FidelityReport {
  double fidelity = 0.0;
  double variance_factor = 0.0;
  double exponential_factor = 0.0;
  /// Rotation taking both states to the principal axes of the ideal state.
  double principal_angle = 0.0;
  /// |cov_xp| / sqrt(Vx Vp) of the actual state in the principal frame.
  double coalignment_residual = 0.0;
  Vector2 ideal_mean = Vector2::Zero();
  Vector2 actual_mean = Vector2::Zero();
  Vector2 ideal_variances = Vector2::Zero();
  Vector2 actual_variances = Vector2::Zero();
};

/// Both states single-mode; `ideal` must be pure. Throws InvariantError if
/// the actual covariance is not diagonal in the ideal principal frame within
/// `coalignment_tolerance`.
FidelityReport fidelity_gaussian(const GaussianState& ideal, const GaussianState& actual,
                                 double coalignment_tolerance = 1e-6);

/// Fidelity reached with a vacuum ancilla on a coherent input:
/// sqrt(2T / (1 + T)).
double classical_limit_fidelity(double transmittance);

/// Loss-corrected input: undoes a pure-loss channel of efficiency eta
/// (mean / sqrt(eta), (C - (1 - eta)/4 I) / eta).
GaussianState infer_lossless_state(const GaussianState& measured, double eta);

/// Gaussian Wigner function of a single-mode state on a grid.
WignerGrid analytic_wigner(const GaussianState& state, const WignerGridSpec& spec);

struct FidelityEstimate {
  double fidelity = 0.0;
  double standard_error = 0.0;
};

/// Fidelity of pooled trajectory shots against `ideal`, with a bootstrap
/// standard error over contiguous batches of shots. Sampled covariances
/// carry O(1/sqrt(n)) off-diagonal noise, hence the looser co-alignment
/// tolerance.
FidelityEstimate bootstrap_fidelity(std::span<const ShotRecord> shots, const GaussianState& ideal,
                                    std::size_t n_batches, std::size_t n_resamples, std::uint64_t seed,
                                    double coalignment_tolerance = 0.05);

}  // namespace sqz
