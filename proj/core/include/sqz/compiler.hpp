#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "sqz/gaussian_state.hpp"
#include "sqz/squeezer.hpp"
#include "sqz/symplectic.hpp"

namespace sqz {

struct RotationGate {
  double theta = 0.0;
};

/// Feedforward squeezer along x with its physical settings:
/// T = e^{-2r}, gain = nominal_gain(T).
struct SqueezerGate {
  double r = 0.0;
  double transmittance = 1.0;
  double gain = 0.0;

  static SqueezerGate from_r(double r);
};

struct DisplacementGate {
  double dx = 0.0;
  double dp = 0.0;
};

using Gate = std::variant<RotationGate, SqueezerGate, DisplacementGate>;

/// Gates in application order (first element acts first).
struct GatePlan {
  std::vector<Gate> gates;

  std::size_t squeezer_count() const;
};

/// S = R(theta_post) diag(e^{-r}, e^{r}) R(theta_pre), r >= 0.
struct EulerAngles {
  double theta_post = 0.0;
  double r = 0.0;
  double theta_pre = 0.0;
};

/// Singular-value (Euler) form of a 2x2 symplectic. theta_pre is
/// canonicalized into (-pi/2, pi/2] and theta_post into (-pi, pi]; for r = 0
/// the whole rotation goes to theta_post. Throws InvariantError unless
/// |det S - 1| <= 1e-10.
EulerAngles euler_decompose(const Matrix2& s);

Matrix2 euler_matrix(const EulerAngles& e);

/// [rotation(theta_pre), squeezer(r), rotation(theta_post), displacement(d)]
/// with trivial gates elided.
GatePlan plan_from_unitary(const Matrix2& s, const Vector2& d);

/// The single-mode affine map a plan implements with ideal gates.
SymplecticTransform recompose(const GatePlan& plan);

/// Runs the plan on `input`, each squeezer through the feedforward protocol
/// with an ancilla of `ancilla_db` (+infinity: closed-form infinitely
/// squeezed ancilla, which also bypasses `imperfections`). Rotations and
/// displacements are exact.
GaussianState simulate_plan(const GatePlan& plan, const GaussianState& input, double ancilla_db,
                            const ImperfectionModel& imperfections = ImperfectionModel::none());

}  // namespace sqz
