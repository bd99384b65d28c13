#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sqz/channels.hpp"
#include "sqz/homodyne.hpp"
#include "sqz/symplectic.hpp"
#include "sqz/units.hpp"

namespace sqz {
namespace {

constexpr double kTight = 1e-12;

Matrix2 ideal_cov(const GaussianState& s) { return s.mode_cov(0); }

TEST(GaussianState, VacuumMoments) {
  const GaussianState v1 = make_vacuum(1);
  EXPECT_EQ(v1.n_modes(), 1u);
  EXPECT_TRUE(v1.mean().isZero());
  EXPECT_TRUE(v1.cov().isApprox(0.25 * Matrix::Identity(2, 2)));
  const GaussianState v2 = make_vacuum(2);
  EXPECT_TRUE(v2.cov().isApprox(0.25 * Matrix::Identity(4, 4)));
  for (double a : {0.0, 0.3, 1.2, 2.9}) EXPECT_NEAR(marginal_variance(v1, 0, a), 0.25, kTight);
  EXPECT_THROW(make_vacuum(0), std::invalid_argument);
}

TEST(GaussianState, Coherent) {
  const GaussianState c = make_coherent(1.0, 1.0);
  EXPECT_DOUBLE_EQ(c.mean()(0), 1.0);
  EXPECT_DOUBLE_EQ(c.mean()(1), 1.0);
  EXPECT_TRUE(c.cov().isApprox(make_vacuum().cov()));
  EXPECT_TRUE(make_coherent(0, 0).mean().isZero());
}

TEST(GaussianState, SqueezedVacuum) {
  EXPECT_TRUE(make_squeezed_vacuum(0.0).cov().isApprox(make_vacuum().cov()));
  const double r = 5.1 / 20.0 * std::log(10.0);
  EXPECT_NEAR(r, 0.5872, 1e-4);
  const GaussianState s = make_squeezed_vacuum(r);
  EXPECT_NEAR(s.cov()(0, 0), 0.25 * std::exp(-2 * r), kTight);
  EXPECT_NEAR(s.cov()(0, 0), 0.07726, 1e-5);
  EXPECT_NEAR(s.cov()(1, 1), 0.80898, 1e-5);
  for (double rr : {0.1, 0.7, 2.0}) {
    const Matrix2 c = make_squeezed_vacuum(rr, 0.4).mode_cov(0);
    EXPECT_NEAR(c.determinant(), 1.0 / 16.0, 1e-12);
    EXPECT_NEAR(marginal_variance(make_squeezed_vacuum(rr, 0.4), 0, 0.4), 0.25 * std::exp(-2 * rr), kTight);
  }
}

TEST(GaussianState, RejectsUnphysical) {
  Matrix c = 0.25 * Matrix::Identity(2, 2);
  c(0, 0) = 0.1;  // violates Vx Vp >= 1/16
  EXPECT_THROW(GaussianState(Vector::Zero(2), c), InvariantError);
  Matrix asym = 0.3 * Matrix::Identity(2, 2);
  asym(0, 1) = 0.01;
  EXPECT_THROW(GaussianState(Vector::Zero(2), asym), InvariantError);
  EXPECT_THROW(GaussianState(Vector::Zero(3), Matrix::Identity(3, 3)), std::invalid_argument);
  Vector m = Vector::Zero(2);
  m(0) = std::nan("");
  EXPECT_THROW(GaussianState(m, 0.25 * Matrix::Identity(2, 2)), InvariantError);
}

TEST(GaussianState, SymplecticEigenvaluesAndPurity) {
  EXPECT_NEAR(make_thermal(0.75).symplectic_eigenvalues()(0), 0.75, kTight);
  EXPECT_NEAR(make_squeezed_vacuum(1.3, 0.2).purity_determinant(), 1.0, 1e-9);
  EXPECT_GT(make_thermal(0.5).purity_determinant(), 1.0);
}

TEST(GaussianState, PartialTraceOfProduct) {
  const GaussianState a = make_squeezed_vacuum(0.3, 0.1);
  const GaussianState b = make_coherent(0.5, -1.0);
  const GaussianState ab = tensor(a, b);
  const std::vector<std::size_t> keep1{1};
  const std::vector<std::size_t> keep0{0};
  EXPECT_TRUE(partial_trace(ab, keep1).cov().isApprox(b.cov()));
  EXPECT_TRUE(partial_trace(ab, keep1).mean().isApprox(b.mean()));
  EXPECT_TRUE(partial_trace(ab, keep0).cov().isApprox(a.cov()));
  const std::vector<std::size_t> bad{2};
  EXPECT_THROW(partial_trace(ab, bad), std::out_of_range);
}

TEST(Symplectic, BeamSplitterSigns) {
  const SymplecticTransform bs = beam_splitter(0.5);
  const double h = 1.0 / std::sqrt(2.0);
  Matrix expected(4, 4);
  // a' = h a + h b, b' = h b - h a
  expected << h, 0, h, 0,  //
      0, h, 0, h,          //
      -h, 0, h, 0,         //
      0, -h, 0, h;
  EXPECT_LT(oracle::max_abs(bs.matrix() - expected), kTight);
  EXPECT_LT(oracle::max_abs(beam_splitter(1.0).matrix() - Matrix::Identity(4, 4)), kTight);
  for (double t : {0.0, 0.1, 0.37, 0.75, 1.0}) EXPECT_LE(symplectic_residual(beam_splitter(t).matrix()), 1e-10);
  EXPECT_THROW(beam_splitter(1.1), std::invalid_argument);
  EXPECT_THROW(beam_splitter(-0.1), std::invalid_argument);
}

TEST(Symplectic, ElementaryGates) {
  EXPECT_LT(oracle::max_abs(phase_rotation(0.0).matrix() - Matrix::Identity(2, 2)), kTight);
  const GaussianState sq = apply(squeeze(std::log(2.0)), make_vacuum());
  EXPECT_NEAR(sq.cov()(0, 0), 0.0625, kTight);
  EXPECT_NEAR(sq.cov()(1, 1), 1.0, kTight);
  const GaussianState d = apply(displacement(1, 0), make_vacuum());
  EXPECT_TRUE(d.mean().isApprox(make_coherent(1, 0).mean()));
  for (double t : {0.3, -1.2}) EXPECT_LE(symplectic_residual(phase_rotation(t).matrix()), 1e-10);
  EXPECT_THROW(SymplecticTransform(Matrix::Identity(2, 2) * 2.0), InvariantError);
}

TEST(Symplectic, ApplyProperties) {
  const GaussianState in = make_coherent(1.5, -0.5);
  const GaussianState same = apply(SymplecticTransform::identity(1), in);
  EXPECT_TRUE(same.mean().isApprox(in.mean()));
  // Transmitted arm carries sqrt(T) of the input mean.
  const GaussianState out = apply(beam_splitter(0.25), tensor(make_coherent(2.0, 4.0), make_vacuum()));
  EXPECT_NEAR(out.mean()(0), 1.0, kTight);
  EXPECT_NEAR(out.mean()(1), 2.0, kTight);
  // Squeezes add.
  const GaussianState a = apply(squeeze(0.3), apply(squeeze(0.4), in));
  const GaussianState b = apply(squeeze(0.7), in);
  EXPECT_LT(oracle::max_abs(a.cov() - b.cov()), kTight);
  EXPECT_LT(oracle::max_abs(a.mean() - b.mean()), kTight);
  // Purity preserved.
  const GaussianState pure = make_squeezed_vacuum(0.9, 0.3);
  EXPECT_NEAR(apply(compose(squeeze(0.5), phase_rotation(1.1)), pure).purity_determinant(), 1.0, 1e-9);
  EXPECT_THROW(apply(beam_splitter(0.5), in), std::invalid_argument);
}

TEST(Channels, LossFormula) {
  const GaussianState s = make_squeezed_vacuum(5.1 / 20.0 * std::log(10.0));
  EXPECT_NEAR(apply_loss(s, 0, 0.96).cov()(0, 0), 0.96 * 0.07726 + 0.04 * 0.25, 1e-5);
  EXPECT_NEAR(apply_loss(s, 0, 0.96).cov()(0, 0), 0.08417, 1e-5);
  EXPECT_LT(oracle::max_abs(apply_loss(s, 0, 1.0).cov() - s.cov()), kTight);
  const GaussianState gone = apply_loss(make_coherent(3, 1), 0, 0.0);
  EXPECT_TRUE(gone.mean().isZero());
  EXPECT_LT(oracle::max_abs(gone.cov() - make_vacuum().cov()), kTight);
  EXPECT_THROW(apply_loss(s, 0, 1.5), std::invalid_argument);
}

TEST(Channels, LossMatchesBeamSplitterWithVacuum) {
  const GaussianState two = apply(beam_splitter(0.3), tensor(make_squeezed_vacuum(0.8, 0.2), make_coherent(1, -2)));
  for (double eta : {0.0, 0.2, 0.5, 0.96, 1.0}) {
    for (std::size_t mode : {0u, 1u}) {
      const GaussianState a = apply_loss(two, mode, eta);
      const GaussianState b = oracle::loss_by_beam_splitter(two, mode, eta);
      EXPECT_LT(oracle::max_abs(a.cov() - b.cov()), kTight) << "eta " << eta;
      EXPECT_LT(oracle::max_abs(a.mean() - b.mean()), kTight);
    }
  }
}

TEST(Channels, LossIncreasesMixedness) {
  const GaussianState s = make_squeezed_vacuum(0.6);
  double prev = s.purity_determinant();
  for (double eta : {0.9, 0.7, 0.5}) {
    const double d = apply_loss(s, 0, eta).purity_determinant();
    EXPECT_GT(d, 1.0);
    EXPECT_GT(d, prev - 1e-12);
    prev = d;
  }
  EXPECT_NEAR(apply_loss(make_vacuum(), 0, 0.5).purity_determinant(), 1.0, kTight);
}

TEST(Homodyne, ProductStateUnaffected) {
  const GaussianState ab = tensor(make_squeezed_vacuum(0.4, 0.3), make_coherent(1, 1));
  const GaussianState kept = homodyne_condition(ab, 1, kPi / 2, 2.3);
  EXPECT_LT(oracle::max_abs(kept.cov() - make_squeezed_vacuum(0.4, 0.3).cov()), kTight);
  EXPECT_TRUE(kept.mean().isZero(kTight));
}

TEST(Homodyne, VacuumPairStaysUncorrelated) {
  // Two vacua are invariant under a beam splitter, so a reading on one port
  // tells nothing about the other.
  const GaussianState two = apply(beam_splitter(0.5), make_vacuum(2));
  for (double y : {-1.0, 0.0, 0.4}) {
    const GaussianState kept = homodyne_condition(two, 1, kPi / 2, y);
    EXPECT_LT(oracle::max_abs(kept.cov() - make_vacuum().cov()), kTight);
    EXPECT_TRUE(kept.mean().isZero(kTight));
  }
}

TEST(Homodyne, BalancedSplitterWithSqueezedPort) {
  // Infinitely squeezed x on port b: a reading y of p_b pins p_a to -y with
  // the residual set by the finite p variance of port a.
  const double r = 4.0;
  const GaussianState two = apply(beam_splitter(0.5), tensor(make_vacuum(), make_squeezed_vacuum(r, kPi / 2)));
  const GaussianState kept = homodyne_condition(two, 1, kPi / 2, 0.6);
  const double va = 0.25, vb = 0.25 * std::exp(-2 * r);
  // p_a' = (p_a + p_b)/sqrt2, p_b' = (p_b - p_a)/sqrt2.
  const double cov_ab = (vb - va) / 2, v = (va + vb) / 2;
  EXPECT_NEAR(kept.cov()(1, 1), v - cov_ab * cov_ab / v, kTight);
  EXPECT_NEAR(kept.mean()(1), cov_ab / v * 0.6, kTight);
  // x is uncorrelated with the measured p and keeps its unconditioned variance.
  EXPECT_NEAR(kept.cov()(0, 0), (0.25 + 0.25 * std::exp(2 * r)) / 2, 1e-9);
}

TEST(Homodyne, MatchesGridSlicing) {
  const GaussianState two =
      apply(beam_splitter(0.3), tensor(make_squeezed_vacuum(0.6, 0.4), apply(squeeze(0.5), make_coherent(0.5, 1.0))));
  for (double angle : {0.0, kPi / 2, 1.0}) {
    for (double y : {-0.7, 0.2}) {
      const GaussianState kept = homodyne_condition(two, 1, angle, y);
      const oracle::KeptMoments ref = oracle::condition_by_slicing(two, 1, angle, y);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          const double scale = std::sqrt(kept.cov()(i, i) * kept.cov()(j, j));
          EXPECT_NEAR(kept.cov()(i, j), ref.cov(i, j), 1e-3 * scale);
        }
        EXPECT_NEAR(kept.mean()(i), ref.mean(i), 1e-3 * std::sqrt(kept.cov()(i, i)));
      }
    }
  }
}

TEST(Homodyne, LawOfTotalVariance) {
  const GaussianState two = apply(beam_splitter(0.4), tensor(make_squeezed_vacuum(0.8), make_coherent(1, 2)));
  const QuadratureMarginal q = homodyne_marginal(two, 1, kPi / 2);
  const GaussianState at_mean = homodyne_condition(two, 1, kPi / 2, q.mean);
  const GaussianState shifted = homodyne_condition(two, 1, kPi / 2, q.mean + 1.0);
  const Vector2 slope = shifted.mode_mean(0) - at_mean.mode_mean(0);
  const Matrix2 total = at_mean.mode_cov(0) + slope * slope.transpose() * q.variance;
  const std::vector<std::size_t> keep{0};
  const GaussianState reduced = partial_trace(two, keep);
  EXPECT_LT(oracle::max_abs(total - reduced.mode_cov(0)), kTight);
  EXPECT_LT(oracle::max_abs(at_mean.mean() - reduced.mean()), kTight);
}

TEST(Homodyne, Errors) {
  EXPECT_THROW(homodyne_condition(make_vacuum(1), 0, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(homodyne_condition(make_vacuum(2), 2, 0.0, 0.0), std::out_of_range);
}

TEST(Homodyne, OutcomeAngleReduction) {
  const HomodyneOutcome o = make_outcome(1.5, kPi + 0.2, 0);
  EXPECT_NEAR(o.angle, 0.2, kTight);
  EXPECT_DOUBLE_EQ(o.value, -1.5);
  const HomodyneOutcome e = make_outcome(1.5, 2 * kPi + 0.2, 0);
  EXPECT_DOUBLE_EQ(e.value, 1.5);
  const HomodyneOutcome neg = make_outcome(1.0, -0.3, 0);
  EXPECT_GE(neg.angle, 0.0);
  EXPECT_LT(neg.angle, kPi);
  EXPECT_DOUBLE_EQ(neg.value, -1.0);
}

TEST(Homodyne, VacuumSamplingStatistics) {
  Rng rng(2024);
  const std::size_t n = 1000000;
  double sum = 0.0, sum2 = 0.0;
  std::vector<double> first;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = homodyne_sample(make_vacuum(), 0, 0.0, rng).outcome.value;
    sum += v;
    sum2 += v * v;
    if (i < 100000) first.push_back(v);
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  EXPECT_LT(std::abs(mean), 4.0 * 0.5 / std::sqrt(double(n)));
  EXPECT_NEAR(var, 0.25, 0.0025);
  EXPECT_LT(oracle::ks_statistic(first, 0.0, 0.5), oracle::ks_critical_1pct(first.size()));
}

TEST(Homodyne, SamplingMatchesMarginalKS) {
  const GaussianState s = apply(phase_rotation(0.4), make_squeezed_vacuum(0.7));
  Rng rng(7);
  std::vector<double> xs;
  for (int i = 0; i < 100000; ++i) xs.push_back(homodyne_sample(s, 0, 1.1, rng).outcome.value);
  const QuadratureMarginal m = homodyne_marginal(s, 0, 1.1);
  EXPECT_LT(oracle::ks_statistic(xs, m.mean, std::sqrt(m.variance)), oracle::ks_critical_1pct(xs.size()));

  Rng rng2(8);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) sum += homodyne_sample(make_coherent(1, 0), 0, 0.0, rng2).outcome.value;
  EXPECT_NEAR(sum / 20000, 1.0, 4 * 0.5 / std::sqrt(20000.0));
}

TEST(Homodyne, SampleIsDeterministicGivenSeed) {
  const GaussianState two = apply(beam_splitter(0.5), tensor(make_coherent(1, 1), make_squeezed_vacuum(0.5)));
  const HomodyneSample a = homodyne_sample(two, 1, kPi / 2, std::uint64_t{42});
  const HomodyneSample b = homodyne_sample(two, 1, kPi / 2, std::uint64_t{42});
  EXPECT_EQ(a.outcome.value, b.outcome.value);
  ASSERT_TRUE(a.remainder.has_value());
  EXPECT_EQ(a.remainder->mean(), b.remainder->mean());
  EXPECT_FALSE(homodyne_sample(make_vacuum(), 0, 0.0, std::uint64_t{1}).remainder.has_value());
}

TEST(Homodyne, SampledConditionalMeansFollowRegression) {
  // (outcome, conditioned mean) pairs: the conditioned mean is linear in the
  // outcome with the analytic slope, and the outcome variance matches.
  const GaussianState two = apply(beam_splitter(0.5), tensor(make_coherent(1, 1), make_squeezed_vacuum(0.5)));
  const QuadratureMarginal q = homodyne_marginal(two, 1, kPi / 2);
  const GaussianState ref0 = homodyne_condition(two, 1, kPi / 2, 0.0);
  const GaussianState ref1 = homodyne_condition(two, 1, kPi / 2, 1.0);
  const double slope = ref1.mean()(1) - ref0.mean()(1);
  Rng rng(99);
  const int n = 100000;
  double sy = 0, syy = 0, sm = 0, sym = 0;
  for (int i = 0; i < n; ++i) {
    const HomodyneSample h = homodyne_sample(two, 1, kPi / 2, rng);
    const double y = h.outcome.value, m = h.remainder->mean()(1);
    sy += y;
    syy += y * y;
    sm += m;
    sym += y * m;
  }
  const double vy = syy / n - (sy / n) * (sy / n);
  const double cov_ym = sym / n - (sy / n) * (sm / n);
  EXPECT_NEAR(sy / n, q.mean, 3 * std::sqrt(q.variance / n));
  EXPECT_NEAR(vy, q.variance, 3 * q.variance * std::sqrt(2.0 / n));
  EXPECT_NEAR(cov_ym / vy, slope, 1e-9);
}

TEST(Units, Conversions) {
  EXPECT_NEAR(nepers_from_db(5.1), 0.5872, 1e-4);
  EXPECT_NEAR(db_from_nepers(nepers_from_db(3.3)), 3.3, kTight);
  EXPECT_NEAR(variance_ratio_from_db(10.0), 10.0, kTight);
  EXPECT_NEAR(db_from_variance_ratio(0.5), -3.0103, 1e-4);
}

}  // namespace
}  // namespace sqz
