#include "sqz/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "sqz/symplectic.hpp"
#include "sqz/units.hpp"

namespace sqz {
namespace {

constexpr double kPurityTolerance = 1e-6;

// Angle in [0, pi) of the eigenvector belonging to the smaller eigenvalue.
double principal_angle_of(const Matrix2& cov) {
  const double major = 0.5 * std::atan2(2.0 * cov(0, 1), cov(0, 0) - cov(1, 1));
  const double minor = major + kPi / 2.0;
  return minor >= kPi ? minor - kPi : minor;
}

bool isotropic(const Matrix2& cov) {
  const double scale = cov.trace();
  return std::abs(cov(0, 0) - cov(1, 1)) <= 1e-12 * scale && std::abs(cov(0, 1)) <= 1e-12 * scale;
}

}  // namespace

double noise_power_db(double variance) {
  if (!(variance > 0.0)) throw std::invalid_argument("noise power needs a positive variance");
  return db_from_variance_ratio(variance / kVacuumVariance);
}

GaussianState ideal_squeezed_target(const GaussianState& input, double r) {
  if (input.n_modes() != 1) throw std::invalid_argument("ideal_squeezed_target expects a single-mode state");
  return apply(squeeze(r), input);
}

FidelityReport fidelity_gaussian(const GaussianState& ideal, const GaussianState& actual,
                                 double coalignment_tolerance) {
  if (ideal.n_modes() != 1 || actual.n_modes() != 1) {
    throw std::invalid_argument("fidelity_gaussian compares single-mode states");
  }
  if (std::abs(ideal.purity_determinant() - 1.0) > kPurityTolerance) {
    throw std::invalid_argument("the ideal state must be pure");
  }

  const Matrix2 ideal_cov = ideal.mode_cov(0);
  const Matrix2 actual_cov = actual.mode_cov(0);
  // Align x with the squeezed axis of the ideal state; an isotropic ideal
  // leaves the choice to the actual state.
  const double angle = principal_angle_of(isotropic(ideal_cov) ? actual_cov : ideal_cov);
  const Matrix2 rot = rotation_matrix(angle);

  FidelityReport rep;
  rep.principal_angle = angle;
  const Matrix2 ci = rot.transpose() * ideal_cov * rot;
  const Matrix2 ca = rot.transpose() * actual_cov * rot;
  rep.ideal_mean = rot.transpose() * ideal.mode_mean(0);
  rep.actual_mean = rot.transpose() * actual.mode_mean(0);
  rep.ideal_variances = Vector2(ci(0, 0), ci(1, 1));
  rep.actual_variances = Vector2(ca(0, 0), ca(1, 1));
  rep.coalignment_residual = std::abs(ca(0, 1)) / std::sqrt(ca(0, 0) * ca(1, 1));
  if (rep.coalignment_residual > coalignment_tolerance) {
    throw InvariantError("covariances are not co-aligned (residual " + std::to_string(rep.coalignment_residual) +
                         ")");
  }

  const double sx = rep.actual_variances(0) + rep.ideal_variances(0);
  const double sp = rep.actual_variances(1) + rep.ideal_variances(1);
  const Vector2 d = rep.actual_mean - rep.ideal_mean;
  rep.variance_factor = 1.0 / (2.0 * std::sqrt(sx * sp));
  rep.exponential_factor = std::exp(-d(0) * d(0) / (2.0 * sx) - d(1) * d(1) / (2.0 * sp));
  rep.fidelity = rep.variance_factor * rep.exponential_factor;
  return rep;
}

double classical_limit_fidelity(double transmittance) {
  if (!(transmittance > 0.0 && transmittance <= 1.0)) throw std::invalid_argument("transmittance must lie in (0, 1]");
  return std::sqrt(2.0 * transmittance / (1.0 + transmittance));
}

GaussianState infer_lossless_state(const GaussianState& measured, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("efficiency must lie in (0, 1]");
  const auto n = measured.mean().size();
  Matrix cov = (measured.cov() - (1.0 - eta) * kVacuumVariance * Matrix::Identity(n, n)) / eta;
  return GaussianState(measured.mean() / std::sqrt(eta), cov);
}

WignerGrid analytic_wigner(const GaussianState& state, const WignerGridSpec& spec) {
  if (state.n_modes() != 1) throw std::invalid_argument("analytic_wigner expects a single-mode state");
  spec.validate();
  const Matrix2 cov = state.mode_cov(0);
  const double det = cov.determinant();
  if (!(det > 0.0)) throw InvariantError("singular covariance");
  const Matrix2 inv = cov.inverse();
  const Vector2 m = state.mode_mean(0);
  const double norm = 1.0 / (2.0 * kPi * std::sqrt(det));
  Matrix values(static_cast<Eigen::Index>(spec.n_x), static_cast<Eigen::Index>(spec.n_p));
  for (std::size_t i = 0; i < spec.n_x; ++i) {
    for (std::size_t j = 0; j < spec.n_p; ++j) {
      const Vector2 v(spec.x_at(i) - m(0), spec.p_at(j) - m(1));
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = norm * std::exp(-0.5 * v.dot(inv * v));
    }
  }
  return WignerGrid(spec, std::move(values));
}

FidelityEstimate bootstrap_fidelity(std::span<const ShotRecord> shots, const GaussianState& ideal,
                                    std::size_t n_batches, std::size_t n_resamples, std::uint64_t seed,
                                    double coalignment_tolerance) {
  if (n_batches < 2 || shots.size() < n_batches) throw std::invalid_argument("need at least two non-empty batches");
  if (n_resamples == 0) throw std::invalid_argument("n_resamples must be >= 1");

  // Per-batch sufficient statistics: sums of means, outer products, covs.
  struct Batch {
    double n = 0.0;
    Vector2 sum_mean = Vector2::Zero();
    Matrix2 sum_outer = Matrix2::Zero();
    Matrix2 sum_cov = Matrix2::Zero();
  };
  std::vector<Batch> batches(n_batches);
  const std::size_t per = shots.size() / n_batches;
  for (std::size_t b = 0; b < n_batches; ++b) {
    const std::size_t end = b + 1 == n_batches ? shots.size() : (b + 1) * per;
    for (std::size_t i = b * per; i < end; ++i) {
      batches[b].n += 1.0;
      batches[b].sum_mean += shots[i].mean;
      batches[b].sum_outer += shots[i].mean * shots[i].mean.transpose();
      batches[b].sum_cov += shots[i].cov;
    }
  }
  const auto pooled_fidelity = [&](const std::vector<std::size_t>& pick) {
    Batch t;
    for (std::size_t b : pick) {
      t.n += batches[b].n;
      t.sum_mean += batches[b].sum_mean;
      t.sum_outer += batches[b].sum_outer;
      t.sum_cov += batches[b].sum_cov;
    }
    const Vector2 mean = t.sum_mean / t.n;
    const Matrix2 cov = t.sum_cov / t.n + (t.sum_outer - t.n * mean * mean.transpose()) / (t.n - 1.0);
    return fidelity_gaussian(ideal, GaussianState(mean, cov), coalignment_tolerance).fidelity;
  };

  std::vector<std::size_t> all(n_batches);
  for (std::size_t b = 0; b < n_batches; ++b) all[b] = b;
  FidelityEstimate est;
  est.fidelity = pooled_fidelity(all);

  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n_batches - 1);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<std::size_t> resample(n_batches);
  for (std::size_t k = 0; k < n_resamples; ++k) {
    for (auto& b : resample) b = pick(rng);
    const double f = pooled_fidelity(resample);
    sum += f;
    sum_sq += f * f;
  }
  const double mean_f = sum / static_cast<double>(n_resamples);
  est.standard_error = std::sqrt(std::max(0.0, sum_sq / static_cast<double>(n_resamples) - mean_f * mean_f));
  return est;
}

}  // namespace sqz
