#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sqz/channels.hpp"
#include "sqz/metrology.hpp"
#include "sqz/squeezer.hpp"
#include "sqz/units.hpp"

namespace sqz {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kAncilla51 = nepers_from_db(5.1);

TEST(ProtocolConfig, NominalGainAndDerivedQuantities) {
  EXPECT_NEAR(nominal_gain(0.5), -1.0, 1e-15);
  EXPECT_NEAR(nominal_gain(0.25), -std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(nominal_gain(0.75), -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_DOUBLE_EQ(nominal_gain(1.0), 0.0);
  EXPECT_NEAR(r_from_T(0.25), std::log(2.0), 1e-15);
  EXPECT_NEAR(squeezing_db_from_T(0.5), 3.0103, 1e-4);
  const ProtocolConfig c = ProtocolConfig::with_ancilla_db(0.5, 5.1);
  EXPECT_NEAR(c.ancilla_squeezing, kAncilla51, 1e-15);
  EXPECT_NEAR(c.effective_gain(), -1.0, 1e-15);
  ProtocolConfig g = c;
  g.gain = -0.7;
  EXPECT_DOUBLE_EQ(g.effective_gain(), -0.7);
}

TEST(ProtocolConfig, Validation) {
  ProtocolConfig c;
  c.transmittance = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.transmittance = 1.2;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.transmittance = 0.5;
  c.ancilla_squeezing = -0.1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  ImperfectionModel m = ImperfectionModel::defaults();
  m.homodyne_efficiency = 1.2;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = ImperfectionModel::defaults();
  m.phase_jitter_rad = -1;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(ImperfectionModel, Presets) {
  const ImperfectionModel d = ImperfectionModel::defaults();
  EXPECT_NEAR(d.measurement_efficiency(), 0.96 * 0.96 * 0.99, 1e-15);
  EXPECT_NEAR(d.electronic_noise_variance(), 0.25 * std::pow(10.0, -1.9), 1e-15);
  const ImperfectionModel n = ImperfectionModel::none();
  EXPECT_DOUBLE_EQ(n.measurement_efficiency(), 1.0);
  EXPECT_DOUBLE_EQ(n.electronic_noise_variance(), 0.0);
  EXPECT_DOUBLE_EQ(n.displacement_coupler_T, 1.0);
  const ImperfectionModel g = ImperfectionModel::degraded();
  EXPECT_GT(g.phase_jitter_rad, 0.0);
  EXPECT_GT(g.gain_error, 0.0);
}

TEST(IdealMap, NominalGainSqueezesInput) {
  for (double t : {0.75, 0.5, 0.25}) {
    const ProtocolConfig c{t, kInf, std::nullopt, 0.0};
    const GaussianState out = ideal_output_map(c, make_coherent(2, 2));
    const GaussianState target = ideal_squeezed_target(make_coherent(2, 2), r_from_T(t));
    EXPECT_LT(oracle::max_abs(out.cov() - target.cov()), 1e-12) << t;
    EXPECT_LT(oracle::max_abs(out.mean() - target.mean()), 1e-12) << t;
  }
}

TEST(IdealMap, TransmittanceOneIsIdentity) {
  const GaussianState in = oracle::random_single_mode(5);
  const GaussianState out = ideal_output_map(ProtocolConfig{1.0, 0.3, std::nullopt, 0.0}, in);
  EXPECT_LT(oracle::max_abs(out.cov() - in.cov()), 1e-12);
  EXPECT_LT(oracle::max_abs(out.mean() - in.mean()), 1e-12);
}

TEST(IdealMap, AntiSqueezedQuadratureIndependentOfAncilla) {
  const GaussianState in = make_coherent(2, 2);
  std::vector<double> vp;
  for (double ra : {0.0, kAncilla51, 2.0}) {
    const GaussianState out = ideal_output_map(ProtocolConfig{0.5, ra, std::nullopt, 0.0}, in);
    vp.push_back(out.cov()(1, 1));
    EXPECT_NEAR(out.cov()(1, 1), 0.25 / 0.5, 1e-12);
  }
  EXPECT_NEAR(vp.front(), vp.back(), 1e-12);
}

TEST(IdealMap, SqueezedQuadratureFollowsFormula) {
  for (double t : {0.2, 0.5, 0.9}) {
    for (double ra : {0.0, 0.5, 1.5}) {
      const GaussianState out = ideal_output_map(ProtocolConfig{t, ra, std::nullopt, 0.0}, make_vacuum());
      EXPECT_NEAR(out.cov()(0, 0), t * 0.25 + (1 - t) * 0.25 * std::exp(-2 * ra), 1e-12);
    }
  }
}

TEST(IdealMap, SqueezeAngleRotatesTheOutput) {
  const double theta = 0.6;
  ProtocolConfig c{0.25, kInf, std::nullopt, theta};
  const GaussianState out = ideal_output_map(c, make_vacuum());
  EXPECT_NEAR(marginal_variance(out, 0, theta), 0.25 * 0.25, 1e-12);
  EXPECT_NEAR(marginal_variance(out, 0, theta + kPi / 2), 0.25 * 4, 1e-12);
}

TEST(Deterministic, PerfectApparatusMatchesClosedForm) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GaussianState in = oracle::random_single_mode(seed);
    for (double t : {0.1, 0.5, 0.8}) {
      for (double ra : {0.0, 0.9}) {
        for (std::optional<double> g : {std::optional<double>{}, std::optional<double>{-0.4}}) {
          const ProtocolConfig c{t, ra, g, 0.0};
          const GaussianState a = run_deterministic(c, ImperfectionModel::none(), in).output;
          const GaussianState b = ideal_output_map(c, in);
          EXPECT_LT(oracle::max_abs(a.cov() - b.cov()), 1e-12);
          EXPECT_LT(oracle::max_abs(a.mean() - b.mean()), 1e-12);
        }
      }
    }
  }
}

TEST(Deterministic, EffectiveSqueezingReported) {
  const ProtocolResult r =
      run_deterministic(ProtocolConfig::with_ancilla_db(0.5, 5.1), ImperfectionModel::none(), make_coherent(2, 2));
  EXPECT_NEAR(r.effective_squeezing_db, -noise_power_db(r.output.cov()(0, 0)), 1e-12);
  EXPECT_GT(r.effective_squeezing_db, 0.0);
  EXPECT_FALSE(r.homodyne_trace.has_value());
}

TEST(Deterministic, ImperfectionsOnlyAddNoise) {
  const ProtocolConfig c = ProtocolConfig::with_ancilla_db(0.5, 5.1);
  const GaussianState ideal = run_deterministic(c, ImperfectionModel::none(), make_coherent(2, 2)).output;
  const GaussianState real = run_deterministic(c, ImperfectionModel::defaults(), make_coherent(2, 2)).output;
  EXPECT_GT(real.cov()(0, 0), ideal.cov()(0, 0));
  EXPECT_GT(real.cov()(1, 1), ideal.cov()(1, 1));
  const GaussianState worse = run_deterministic(c, ImperfectionModel::degraded(), make_coherent(2, 2)).output;
  EXPECT_GT(worse.cov()(0, 0), real.cov()(0, 0));
}

TEST(Deterministic, ElectronicNoiseEntersAntiSqueezedQuadrature) {
  ImperfectionModel m = ImperfectionModel::none();
  m.electronic_noise_db = 0.0;  // shot-noise level readout noise
  const ProtocolConfig c = ProtocolConfig::with_ancilla_db(0.5, 5.1);
  const GaussianState a = run_deterministic(c, ImperfectionModel::none(), make_vacuum()).output;
  const GaussianState b = run_deterministic(c, m, make_vacuum()).output;
  // g^2 * 0.25 with g = -1.
  EXPECT_NEAR(b.cov()(1, 1) - a.cov()(1, 1), 0.25, 1e-12);
  EXPECT_NEAR(b.cov()(0, 0), a.cov()(0, 0), 1e-12);
}

TEST(Deterministic, CouplerLossActsLikePureLoss) {
  ImperfectionModel m = ImperfectionModel::none();
  m.displacement_coupler_T = 0.9;
  const ProtocolConfig c = ProtocolConfig::with_ancilla_db(0.5, 5.1);
  const GaussianState in = make_coherent(1, 1);
  const GaussianState a = run_deterministic(c, m, in).output;
  const GaussianState out_ideal = run_deterministic(c, ImperfectionModel::none(), in).output;
  // The coupler sits on the signal before the displacement; its loss adds
  // (1 - T) vacuum to the transmitted arm and shrinks it by T.
  EXPECT_NEAR(a.cov()(0, 0), 0.9 * out_ideal.cov()(0, 0) + 0.1 * 0.25, 1e-12);
}

TEST(Trajectory, DeterministicPerSeed) {
  const ProtocolConfig c = ProtocolConfig::with_ancilla_db(0.5, 5.1);
  const TrajectoryResult a = run_trajectory(c, ImperfectionModel::degraded(), make_coherent(2, 2), 500, 3);
  const TrajectoryResult b = run_trajectory(c, ImperfectionModel::degraded(), make_coherent(2, 2), 500, 3);
  ASSERT_EQ(a.shots.size(), 500u);
  for (std::size_t i = 0; i < a.shots.size(); ++i) {
    EXPECT_EQ(a.shots[i].outcome.value, b.shots[i].outcome.value);
    EXPECT_EQ(a.shots[i].mean, b.shots[i].mean);
  }
  const TrajectoryResult c2 = run_trajectory(c, ImperfectionModel::degraded(), make_coherent(2, 2), 500, 4);
  EXPECT_NE(a.shots[0].outcome.value, c2.shots[0].outcome.value);
  ASSERT_TRUE(a.ensemble.homodyne_trace.has_value());
  EXPECT_EQ(a.ensemble.homodyne_trace->size(), 500u);
}

TEST(Trajectory, EnsembleConvergesToDeterministic) {
  const ProtocolConfig c = ProtocolConfig::with_ancilla_db(0.5, 5.1);
  for (const ImperfectionModel& m : {ImperfectionModel::none(), ImperfectionModel::degraded()}) {
    const TrajectoryResult t = run_trajectory(c, m, make_coherent(2, 2), 40000, 17);
    const GaussianState det = run_deterministic(c, m, make_coherent(2, 2)).output;
    const EnsembleErrors se = ensemble_standard_errors(t.shots);
    const GaussianState& ens = t.ensemble.output;
    for (int i = 0; i < 2; ++i) {
      EXPECT_LE(std::abs(ens.mean()(i) - det.mean()(i)), 4 * se.mean(i) + 1e-10);
      for (int j = 0; j < 2; ++j) EXPECT_LE(std::abs(ens.cov()(i, j) - det.cov()(i, j)), 4 * se.cov(i, j) + 1e-10);
    }
  }
}

TEST(Trajectory, ShotConditionsOnExplicitDraw) {
  const ProtocolConfig c = ProtocolConfig::with_ancilla_db(0.5, 5.1);
  ShotDraw d;
  d.measured_value = 0.3;
  const ShotRecord s = run_shot(c, ImperfectionModel::none(), make_coherent(2, 2), d, 7);
  EXPECT_EQ(s.index, 7u);
  // Covariance of a shot does not depend on the reading; the mean shifts linearly.
  ShotDraw d2 = d;
  d2.measured_value = 1.3;
  const ShotRecord s2 = run_shot(c, ImperfectionModel::none(), make_coherent(2, 2), d2, 7);
  EXPECT_LT(oracle::max_abs(s.cov - s2.cov), 1e-12);
  ShotDraw d3 = d;
  d3.measured_value = 2.3;
  const ShotRecord s3 = run_shot(c, ImperfectionModel::none(), make_coherent(2, 2), d3, 7);
  EXPECT_LT(oracle::max_abs((s3.mean - s2.mean) - (s2.mean - s.mean)), 1e-12);
}

TEST(Trajectory, PooledMomentsAndErrors) {
  std::vector<ShotRecord> shots(4);
  for (std::size_t i = 0; i < shots.size(); ++i) {
    shots[i].mean = Vector2(double(i), 0.0);
    shots[i].cov = 0.25 * Matrix2::Identity();
  }
  const GaussianState pooled = ensemble_from_shots(shots);
  EXPECT_NEAR(pooled.mean()(0), 1.5, 1e-15);
  EXPECT_NEAR(pooled.cov()(0, 0), 0.25 + 5.0 / 3.0, 1e-12);  // sample variance of 0..3
  EXPECT_NEAR(pooled.cov()(1, 1), 0.25, 1e-12);
  const EnsembleErrors se = ensemble_standard_errors(shots);
  EXPECT_NEAR(se.cov(1, 1), 0.0, 1e-15);
  EXPECT_GT(se.mean(0), 0.0);
  std::vector<ShotRecord> one(1);
  one[0].cov = 0.25 * Matrix2::Identity();
  EXPECT_THROW(ensemble_standard_errors(one), std::invalid_argument);
  EXPECT_THROW(ensemble_from_shots(std::span<const ShotRecord>{}), std::invalid_argument);
}

TEST(Gain, NominalIsOptimalForStrongAncilla) {
  const ProtocolConfig base = ProtocolConfig::with_ancilla_db(0.5, 20.0);
  double best_g = 0.0, best_v = 1e9;
  for (int k = 0; k <= 400; ++k) {
    const double g = -1.2 + 0.4 * k / 400.0;
    ProtocolConfig c = base;
    c.gain = g;
    const double v = run_deterministic(c, ImperfectionModel::none(), make_vacuum()).output.cov()(1, 1);
    if (v < best_v) best_v = v, best_g = g;
  }
  EXPECT_NEAR(best_g, -1.0, 0.03);
}

TEST(Gain, FiniteAncillaOptimumIsBelowNominalMagnitude) {
  // Var_p(g) = (sqrt T - g sqrt(1-T))^2 V + (sqrt(1-T) + g sqrt T)^2 V_a,
  // minimized at a smaller |g| when the ancilla's anti-squeezing is finite.
  const double t = 0.5, ra = kAncilla51;
  const double va = 0.25 * std::exp(2 * ra), v = 0.25;
  const double st = std::sqrt(t), s1 = std::sqrt(1 - t);
  const double g_opt = (st * s1 * v - s1 * st * va) / (s1 * s1 * v + t * va);
  ProtocolConfig c = ProtocolConfig::with_ancilla_db(t, 5.1);
  c.gain = g_opt;
  const double v_opt = run_deterministic(c, ImperfectionModel::none(), make_vacuum()).output.cov()(1, 1);
  c.gain = std::nullopt;
  const double v_nom = run_deterministic(c, ImperfectionModel::none(), make_vacuum()).output.cov()(1, 1);
  EXPECT_LT(v_opt, v_nom);
  EXPECT_GT(g_opt, -1.0);
}

}  // namespace
}  // namespace sqz
