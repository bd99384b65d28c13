#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sqz/gaussian_state.hpp"
#include "sqz/homodyne.hpp"

namespace sqz {

/// Settings of the measurement-and-feedforward squeezer: the input is mixed
/// with a squeezed-vacuum ancilla on a beam splitter of transmittance T, the
/// reflected arm's anti-squeezed quadrature is measured by homodyne
/// detection, and the reading, scaled by `gain`, displaces the transmitted
/// arm. For T < 1 this squeezes the input by r = -ln sqrt(T).
struct ProtocolConfig {
  double transmittance = 1.0;
  /// Ancilla squeezing parameter in nepers; +infinity is accepted by the
  /// closed-form ideal map only.
  double ancilla_squeezing = 0.0;
  /// Feedforward gain; unset means nominal_gain(transmittance).
  std::optional<double> gain;
  /// Phase-space angle of the quadrature to squeeze (0 squeezes x, the
  /// homodyne then measures the conjugate quadrature).
  double squeeze_angle = 0.0;

  static ProtocolConfig with_ancilla_db(double transmittance, double ancilla_db);

  double effective_gain() const;
  void validate() const;
};

/// Losses and noise of a realistic implementation. Efficiencies are power
/// transmissions in [0, 1].
struct ImperfectionModel {
  /// Mode matching to the feedforward local oscillator: visibility^2.
  double homodyne_efficiency = 0.96 * 0.96;
  double detector_efficiency = 0.99;
  /// Loss on the ancilla path before the beam splitter.
  double propagation_efficiency = 0.96;
  /// Electronic noise relative to shot noise, added to the homodyne reading.
  /// -infinity disables it.
  double electronic_noise_db = -19.0;
  /// Standard deviation of the relative phase between ancilla and signal
  /// (squeezing-lock fluctuation), radians.
  double phase_jitter_rad = 0.0;
  /// Relative error of the applied feedforward gain: g -> g (1 + gain_error).
  double gain_error = 0.0;
  /// Transmittance of the asymmetric coupler that injects the displacement.
  double displacement_coupler_T = 0.99;

  /// Perfect apparatus.
  static ImperfectionModel none();
  /// Reported apparatus parameters.
  static ImperfectionModel defaults();
  /// Defaults plus squeezing-lock phase jitter (0.14 rad) and a +3.5% gain
  /// error; brings the simulated noise powers and fidelities close to the
  /// measured ones.
  static ImperfectionModel degraded();

  /// Overall efficiency of the feedforward homodyne arm.
  double measurement_efficiency() const;
  /// Readout noise variance in quadrature units: (1/4) 10^{db/10}.
  double electronic_noise_variance() const;
  void validate() const;
};

struct ProtocolResult {
  GaussianState output;
  std::optional<std::vector<HomodyneOutcome>> homodyne_trace;
  /// Suppression of the squeezed quadrature below shot noise, dB (positive
  /// when squeezed).
  double effective_squeezing_db = 0.0;
};

/// One Monte Carlo shot: the homodyne reading fed forward and the resulting
/// output mode (conditioned, displaced).
struct ShotRecord {
  std::size_t index = 0;
  HomodyneOutcome outcome;
  Vector2 mean = Vector2::Zero();
  Matrix2 cov = Matrix2::Zero();
};

struct TrajectoryResult {
  ProtocolResult ensemble;
  std::vector<ShotRecord> shots;
};

/// Random inputs of a single shot.
struct ShotDraw {
  /// Ancilla phase offset from lock jitter.
  double phase_offset = 0.0;
  /// Raw quadrature value on the measured arm (before readout noise).
  double measured_value = 0.0;
  double readout_noise = 0.0;
};

/// -sqrt((1 - T)/T): cancels the ancilla's anti-squeezed quadrature.
double nominal_gain(double transmittance);
/// r = -ln sqrt(T).
double r_from_T(double transmittance);
/// -10 log10 T.
double squeezing_db_from_T(double transmittance);

/// Closed-form ideal output: x -> sqrt(T) x + sqrt(1-T) x_anc and
/// p -> (sqrt(T) - g sqrt(1-T)) p + (sqrt(1-T) + g sqrt(T)) p_anc, which at
/// nominal gain is p / sqrt(T). Single-mode input.
GaussianState ideal_output_map(const ProtocolConfig& config, const GaussianState& input);

/// Ensemble output of the full chain with imperfections. With
/// ImperfectionModel::none() it coincides with ideal_output_map.
ProtocolResult run_deterministic(const ProtocolConfig& config, const ImperfectionModel& imperfections,
                                 const GaussianState& input);

/// Monte Carlo shots. Moments of the returned ensemble converge to
/// run_deterministic.
TrajectoryResult run_trajectory(const ProtocolConfig& config, const ImperfectionModel& imperfections,
                                const GaussianState& input, std::size_t n_shots, std::uint64_t seed);

/// One shot with explicit random inputs.
ShotRecord run_shot(const ProtocolConfig& config, const ImperfectionModel& imperfections, const GaussianState& input,
                    const ShotDraw& draw, std::size_t index = 0);

/// Gaussian state with the pooled moments of a set of shots: mean of the
/// shot means, average shot covariance plus the sample covariance of means.
GaussianState ensemble_from_shots(std::span<const ShotRecord> shots);

struct EnsembleErrors {
  Vector2 mean = Vector2::Zero();
  Matrix2 cov = Matrix2::Zero();
};

/// Standard errors of the pooled moments: each covariance element is the
/// average of C_i + (m_i - m)(m_i - m)^T, so its error is the spread of that
/// per-shot quantity over sqrt(n).
EnsembleErrors ensemble_standard_errors(std::span<const ShotRecord> shots);

}  // namespace sqz
