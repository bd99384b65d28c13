#include "sqz/squeezer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sqz/channels.hpp"
#include "sqz/symplectic.hpp"
#include "sqz/units.hpp"

namespace sqz {
namespace {

constexpr std::size_t kSignal = 0;
constexpr std::size_t kAncilla = 1;
constexpr double kMeasuredAngle = kPi / 2.0;

void require_single_mode(const GaussianState& input) {
  if (input.n_modes() != 1) throw std::invalid_argument("the squeezer acts on single-mode inputs");
}

void require_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

// Ancilla covariance averaged over a Gaussian phase jitter of standard
// deviation sigma. Averaging is exact at the level of second moments because
// the whole chain is linear in the ancilla covariance.
GaussianState ancilla_state(double r, double phase_offset, double jitter_sigma) {
  const GaussianState base = make_squeezed_vacuum(r, phase_offset);
  if (jitter_sigma == 0.0) return base;
  const double c2 = 0.5 * (1.0 + std::exp(-2.0 * jitter_sigma * jitter_sigma));
  const double lo = kVacuumVariance * std::exp(-2.0 * r);
  const double hi = kVacuumVariance * std::exp(2.0 * r);
  const Matrix2 d = Vector2(lo * c2 + hi * (1.0 - c2), hi * c2 + lo * (1.0 - c2)).asDiagonal();
  const Matrix2 rot = rotation_matrix(phase_offset);
  return GaussianState(Vector::Zero(2), rot * d * rot.transpose());
}

// Input rotated into the protocol frame (squeezed quadrature along x).
GaussianState to_protocol_frame(const ProtocolConfig& config, const GaussianState& input) {
  return apply(phase_rotation(-config.squeeze_angle), input);
}

GaussianState to_lab_frame(const ProtocolConfig& config, const GaussianState& output) {
  return apply(phase_rotation(config.squeeze_angle), output);
}

// Input and ancilla after ancilla propagation loss, the beam splitter, the
// measured-arm detection loss and the coupler loss on the signal arm.
GaussianState prepare_joint(const ProtocolConfig& config, const ImperfectionModel& imp,
                            const GaussianState& framed_input, const GaussianState& ancilla) {
  GaussianState joint = tensor(framed_input, ancilla);
  joint = apply_loss(joint, kAncilla, imp.propagation_efficiency);
  joint = apply(beam_splitter(config.transmittance, kSignal, kAncilla, 2), joint);
  joint = apply_loss(joint, kAncilla, imp.measurement_efficiency());
  return apply_loss(joint, kSignal, imp.displacement_coupler_T);
}

Feedforward feedforward_settings(const ProtocolConfig& config, const ImperfectionModel& imp) {
  Feedforward ff;
  ff.measured_mode = kAncilla;
  ff.angle = kMeasuredAngle;
  ff.target_mode = kSignal;
  const double applied = config.effective_gain() * (1.0 + imp.gain_error);
  ff.gain = Vector2(0.0, applied / std::sqrt(imp.measurement_efficiency()));
  ff.readout_noise_variance = imp.electronic_noise_variance();
  return ff;
}

double squeezing_db_of(const ProtocolConfig& config, const GaussianState& output) {
  return -db_from_variance_ratio(marginal_variance(output, 0, config.squeeze_angle) / kVacuumVariance);
}

void validate_for_simulation(const ProtocolConfig& config, const ImperfectionModel& imp, const GaussianState& input) {
  require_single_mode(input);
  config.validate();
  imp.validate();
  if (!std::isfinite(config.ancilla_squeezing)) {
    throw std::invalid_argument("finite ancilla squeezing is required outside the closed-form ideal map");
  }
}

}  // namespace

ProtocolConfig ProtocolConfig::with_ancilla_db(double transmittance, double ancilla_db) {
  ProtocolConfig c;
  c.transmittance = transmittance;
  c.ancilla_squeezing = nepers_from_db(ancilla_db);
  return c;
}

double ProtocolConfig::effective_gain() const { return gain ? *gain : nominal_gain(transmittance); }

void ProtocolConfig::validate() const {
  if (!(transmittance > 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("transmittance must lie in (0, 1]");
  }
  if (!(ancilla_squeezing >= 0.0)) throw std::invalid_argument("ancilla squeezing must be >= 0");
  if (gain && !std::isfinite(*gain)) throw std::invalid_argument("gain must be finite");
  if (!std::isfinite(squeeze_angle)) throw std::invalid_argument("squeeze angle must be finite");
}

ImperfectionModel ImperfectionModel::none() {
  ImperfectionModel m;
  m.homodyne_efficiency = 1.0;
  m.detector_efficiency = 1.0;
  m.propagation_efficiency = 1.0;
  m.electronic_noise_db = -std::numeric_limits<double>::infinity();
  m.phase_jitter_rad = 0.0;
  m.gain_error = 0.0;
  m.displacement_coupler_T = 1.0;
  return m;
}

ImperfectionModel ImperfectionModel::defaults() { return ImperfectionModel{}; }

ImperfectionModel ImperfectionModel::degraded() {
  ImperfectionModel m;
  m.phase_jitter_rad = 0.14;
  m.gain_error = 0.035;
  return m;
}

double ImperfectionModel::measurement_efficiency() const { return homodyne_efficiency * detector_efficiency; }

double ImperfectionModel::electronic_noise_variance() const {
  if (electronic_noise_db == -std::numeric_limits<double>::infinity()) return 0.0;
  return kVacuumVariance * variance_ratio_from_db(electronic_noise_db);
}

void ImperfectionModel::validate() const {
  require_unit_interval(homodyne_efficiency, "homodyne_efficiency");
  require_unit_interval(detector_efficiency, "detector_efficiency");
  require_unit_interval(propagation_efficiency, "propagation_efficiency");
  require_unit_interval(displacement_coupler_T, "displacement_coupler_T");
  if (!(measurement_efficiency() > 0.0)) throw std::invalid_argument("feedforward detection efficiency must be > 0");
  if (std::isnan(electronic_noise_db) || electronic_noise_db == std::numeric_limits<double>::infinity()) {
    throw std::invalid_argument("electronic_noise_db must be finite or -inf");
  }
  if (!(phase_jitter_rad >= 0.0) || !std::isfinite(phase_jitter_rad)) {
    throw std::invalid_argument("phase_jitter_rad must be finite and >= 0");
  }
  if (!std::isfinite(gain_error)) throw std::invalid_argument("gain_error must be finite");
}

double nominal_gain(double transmittance) {
  if (!(transmittance > 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("transmittance must lie in (0, 1]");
  }
  return -std::sqrt((1.0 - transmittance) / transmittance);
}

double r_from_T(double transmittance) {
  if (!(transmittance > 0.0)) throw std::invalid_argument("transmittance must be positive");
  return -std::log(std::sqrt(transmittance));
}

double squeezing_db_from_T(double transmittance) {
  if (!(transmittance > 0.0)) throw std::invalid_argument("transmittance must be positive");
  return -10.0 * std::log10(transmittance);
}

GaussianState ideal_output_map(const ProtocolConfig& config, const GaussianState& input) {
  require_single_mode(input);
  config.validate();
  const double t = config.transmittance;
  const double g = config.effective_gain();
  const double in_x = std::sqrt(t);
  const double anc_x = std::sqrt(1.0 - t);
  const double in_p = std::sqrt(t) - g * std::sqrt(1.0 - t);
  const double anc_p = std::sqrt(1.0 - t) + g * std::sqrt(t);

  const double r = config.ancilla_squeezing;
  const double anc_var_x = kVacuumVariance * std::exp(-2.0 * r);
  double anc_p_term = 0.0;
  if (std::isinf(r)) {
    if (std::abs(anc_p) > 1e-12) {
      throw std::invalid_argument("an infinitely squeezed ancilla requires the nominal gain");
    }
  } else {
    anc_p_term = anc_p * anc_p * kVacuumVariance * std::exp(2.0 * r);
  }

  const GaussianState framed = to_protocol_frame(config, input);
  const Vector2 m = framed.mode_mean(0);
  const Matrix2 c = framed.mode_cov(0);
  Matrix2 out;
  out(0, 0) = in_x * in_x * c(0, 0) + anc_x * anc_x * anc_var_x;
  out(0, 1) = in_x * in_p * c(0, 1);
  out(1, 0) = out(0, 1);
  out(1, 1) = in_p * in_p * c(1, 1) + anc_p_term;
  return to_lab_frame(config, GaussianState(Vector2(in_x * m(0), in_p * m(1)), out));
}

ProtocolResult run_deterministic(const ProtocolConfig& config, const ImperfectionModel& imperfections,
                                 const GaussianState& input) {
  validate_for_simulation(config, imperfections, input);
  const GaussianState ancilla = ancilla_state(config.ancilla_squeezing, 0.0, imperfections.phase_jitter_rad);
  const GaussianState joint = prepare_joint(config, imperfections, to_protocol_frame(config, input), ancilla);
  const GaussianState output = to_lab_frame(config, feed_forward(joint, feedforward_settings(config, imperfections)));
  return ProtocolResult{output, std::nullopt, squeezing_db_of(config, output)};
}

ShotRecord run_shot(const ProtocolConfig& config, const ImperfectionModel& imperfections, const GaussianState& input,
                    const ShotDraw& draw, std::size_t index) {
  validate_for_simulation(config, imperfections, input);
  const GaussianState ancilla = make_squeezed_vacuum(config.ancilla_squeezing, draw.phase_offset);
  const GaussianState joint = prepare_joint(config, imperfections, to_protocol_frame(config, input), ancilla);
  const Feedforward ff = feedforward_settings(config, imperfections);
  const GaussianState out =
      to_lab_frame(config, feed_forward_shot(joint, ff, draw.measured_value, draw.readout_noise));
  ShotRecord rec;
  rec.index = index;
  rec.outcome = make_outcome(draw.measured_value + draw.readout_noise, config.squeeze_angle + kMeasuredAngle, kAncilla);
  rec.mean = out.mode_mean(0);
  rec.cov = out.mode_cov(0);
  return rec;
}

TrajectoryResult run_trajectory(const ProtocolConfig& config, const ImperfectionModel& imperfections,
                                const GaussianState& input, std::size_t n_shots, std::uint64_t seed) {
  if (n_shots == 0) throw std::invalid_argument("n_shots must be >= 1");
  validate_for_simulation(config, imperfections, input);

  Rng rng(seed);
  std::normal_distribution<double> standard(0.0, 1.0);
  const double jitter = imperfections.phase_jitter_rad;
  const double noise_sd = std::sqrt(imperfections.electronic_noise_variance());
  const Feedforward ff = feedforward_settings(config, imperfections);
  const GaussianState framed = to_protocol_frame(config, input);

  // Without jitter every shot sees the same pre-measurement state.
  std::optional<GaussianState> fixed_joint;
  if (jitter == 0.0) {
    fixed_joint = prepare_joint(config, imperfections, framed, make_squeezed_vacuum(config.ancilla_squeezing, 0.0));
  }

  TrajectoryResult result{ProtocolResult{make_vacuum(1), std::vector<HomodyneOutcome>{}, 0.0}, {}};
  result.shots.reserve(n_shots);
  result.ensemble.homodyne_trace->reserve(n_shots);
  for (std::size_t i = 0; i < n_shots; ++i) {
    const double offset = jitter == 0.0 ? 0.0 : jitter * standard(rng);
    const GaussianState joint =
        fixed_joint ? *fixed_joint
                    : prepare_joint(config, imperfections, framed,
                                    make_squeezed_vacuum(config.ancilla_squeezing, offset));
    const QuadratureMarginal prior = homodyne_marginal(joint, kAncilla, kMeasuredAngle);
    const double measured = prior.mean + std::sqrt(prior.variance) * standard(rng);
    const double noise = noise_sd * standard(rng);
    const GaussianState out = to_lab_frame(config, feed_forward_shot(joint, ff, measured, noise));

    ShotRecord rec;
    rec.index = i;
    rec.outcome = make_outcome(measured + noise, config.squeeze_angle + kMeasuredAngle, kAncilla);
    rec.mean = out.mode_mean(0);
    rec.cov = out.mode_cov(0);
    result.ensemble.homodyne_trace->push_back(rec.outcome);
    result.shots.push_back(rec);
  }
  result.ensemble.output = ensemble_from_shots(result.shots);
  result.ensemble.effective_squeezing_db = squeezing_db_of(config, result.ensemble.output);
  return result;
}

GaussianState ensemble_from_shots(std::span<const ShotRecord> shots) {
  if (shots.empty()) throw std::invalid_argument("no shots to pool");
  const double n = static_cast<double>(shots.size());
  // Sums are taken relative to the first shot so that components that do not
  // depend on the reading pool exactly instead of accumulating rounding.
  const ShotRecord& ref = shots.front();
  Vector2 mean = Vector2::Zero();
  Matrix2 cov = Matrix2::Zero();
  for (const ShotRecord& s : shots) {
    mean += s.mean - ref.mean;
    cov += s.cov - ref.cov;
  }
  mean = ref.mean + mean / n;
  cov = ref.cov + cov / n;
  if (shots.size() > 1) {
    Matrix2 spread = Matrix2::Zero();
    for (const ShotRecord& s : shots) {
      const Vector2 d = s.mean - mean;
      spread += d * d.transpose();
    }
    cov += spread / (n - 1.0);
  }
  return GaussianState(mean, cov);
}

EnsembleErrors ensemble_standard_errors(std::span<const ShotRecord> shots) {
  if (shots.size() < 2) throw std::invalid_argument("standard errors need at least two shots");
  const double n = static_cast<double>(shots.size());
  Vector2 mean = Vector2::Zero();
  for (const ShotRecord& s : shots) mean += s.mean - shots.front().mean;
  mean = shots.front().mean + mean / n;
  Matrix2 avg = Matrix2::Zero();
  std::vector<Matrix2> z;
  z.reserve(shots.size());
  Vector2 mean_sq = Vector2::Zero();
  for (const ShotRecord& s : shots) {
    const Vector2 d = s.mean - mean;
    mean_sq += d.cwiseProduct(d);
    z.push_back(s.cov + d * d.transpose());
    avg += z.back();
  }
  avg /= n;
  Matrix2 spread = Matrix2::Zero();
  for (const Matrix2& zi : z) spread += (zi - avg).cwiseProduct(zi - avg);
  EnsembleErrors e;
  e.mean = (mean_sq / (n - 1.0) / n).cwiseSqrt();
  e.cov = (spread / (n - 1.0) / n).cwiseSqrt();
  return e;
}

}  // namespace sqz
