#include "sqz/compiler.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include "sqz/units.hpp"

namespace sqz {
namespace {

constexpr double kDetTolerance = 1e-10;
// Below this spread of singular values the transform is treated as a pure
// rotation; the residual squeeze is far under the round-trip tolerance.
constexpr double kDegenerate = 1e-13;
constexpr double kTrivialAngle = 1e-15;

double angle_of(const Matrix2& rot) { return std::atan2(rot(1, 0), rot(0, 0)); }

// Into (-pi, pi].
double wrap(double theta) {
  double t = std::remainder(theta, 2.0 * kPi);
  if (t <= -kPi) t += 2.0 * kPi;
  return t;
}

}  // namespace

SqueezerGate SqueezerGate::from_r(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("squeezer strength must be finite and >= 0");
  SqueezerGate g;
  g.r = r;
  g.transmittance = std::exp(-2.0 * r);
  g.gain = nominal_gain(g.transmittance);
  return g;
}

std::size_t GatePlan::squeezer_count() const {
  std::size_t n = 0;
  for (const Gate& g : gates) n += std::holds_alternative<SqueezerGate>(g) ? 1 : 0;
  return n;
}

EulerAngles euler_decompose(const Matrix2& s) {
  if (!s.allFinite()) throw InvariantError("non-finite matrix");
  if (std::abs(s.determinant() - 1.0) > kDetTolerance) {
    throw InvariantError("not a single-mode symplectic: det S = " + std::to_string(s.determinant()));
  }
  Eigen::JacobiSVD<Matrix2> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix2 u = svd.matrixU();
  Matrix2 v = svd.matrixV();
  const Vector2 sigma = svd.singularValues();  // descending

  EulerAngles e;
  if (sigma(0) - sigma(1) <= kDegenerate) {
    e.theta_post = angle_of(s);
    return e;
  }
  // det S > 0, so U and V share the sign of their determinant; flipping the
  // second column of both leaves U Sigma V^T unchanged.
  if (u.determinant() < 0.0) {
    u.col(1) *= -1.0;
    v.col(1) *= -1.0;
  }
  // R(pi/2) swaps the singular values so the contracted axis comes first.
  const Matrix2 p = rotation_matrix(kPi / 2.0);
  e.r = std::log(sigma(0));
  e.theta_post = angle_of(u * p.transpose());
  e.theta_pre = angle_of(p * v.transpose());
  // R(pi) = -I commutes with the squeeze, so angles trade pi freely.
  if (e.theta_pre > kPi / 2.0) {
    e.theta_pre -= kPi;
    e.theta_post += kPi;
  } else if (e.theta_pre <= -kPi / 2.0) {
    e.theta_pre += kPi;
    e.theta_post -= kPi;
  }
  e.theta_post = wrap(e.theta_post);
  return e;
}

Matrix2 euler_matrix(const EulerAngles& e) {
  const Matrix2 d = Vector2(std::exp(-e.r), std::exp(e.r)).asDiagonal();
  return rotation_matrix(e.theta_post) * d * rotation_matrix(e.theta_pre);
}

GatePlan plan_from_unitary(const Matrix2& s, const Vector2& d) {
  if (!d.allFinite()) throw std::invalid_argument("non-finite displacement");
  const EulerAngles e = euler_decompose(s);
  GatePlan plan;
  if (std::abs(e.theta_pre) > kTrivialAngle) plan.gates.emplace_back(RotationGate{e.theta_pre});
  if (e.r > 0.0) plan.gates.emplace_back(SqueezerGate::from_r(e.r));
  if (std::abs(e.theta_post) > kTrivialAngle) plan.gates.emplace_back(RotationGate{e.theta_post});
  if (d(0) != 0.0 || d(1) != 0.0) plan.gates.emplace_back(DisplacementGate{d(0), d(1)});
  return plan;
}

SymplecticTransform recompose(const GatePlan& plan) {
  SymplecticTransform total = SymplecticTransform::identity(1);
  for (const Gate& gate : plan.gates) {
    const SymplecticTransform step = std::visit(
        [](const auto& g) -> SymplecticTransform {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, RotationGate>) return phase_rotation(g.theta);
          else if constexpr (std::is_same_v<G, SqueezerGate>) return squeeze(g.r);
          else return displacement(g.dx, g.dp);
        },
        gate);
    total = compose(step, total);
  }
  return total;
}

GaussianState simulate_plan(const GatePlan& plan, const GaussianState& input, double ancilla_db,
                            const ImperfectionModel& imperfections) {
  if (input.n_modes() != 1) throw std::invalid_argument("plans act on single-mode states");
  if (std::isnan(ancilla_db) || ancilla_db < 0.0) throw std::invalid_argument("ancilla_db must be >= 0");
  GaussianState state = input;
  for (const Gate& gate : plan.gates) {
    if (const auto* rot = std::get_if<RotationGate>(&gate)) {
      state = apply(phase_rotation(rot->theta), state);
    } else if (const auto* disp = std::get_if<DisplacementGate>(&gate)) {
      state = apply(displacement(disp->dx, disp->dp), state);
    } else {
      const auto& sq = std::get<SqueezerGate>(gate);
      ProtocolConfig config;
      config.transmittance = sq.transmittance;
      config.gain = sq.gain;
      if (std::isinf(ancilla_db)) {
        config.ancilla_squeezing = std::numeric_limits<double>::infinity();
        // The closed form needs an exactly cancelling gain.
        config.gain.reset();
        state = ideal_output_map(config, state);
      } else {
        config.ancilla_squeezing = nepers_from_db(ancilla_db);
        state = run_deterministic(config, imperfections, state).output;
      }
    }
  }
  return state;
}

}  // namespace sqz
