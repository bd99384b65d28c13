#pragma once

#include <cstddef>

#include "sqz/gaussian_state.hpp"

namespace sqz {

/// Affine phase-space map v -> S v + d with S symplectic.
class SymplecticTransform {
 public:
  /// Throws InvariantError if S Omega S^T deviates from Omega by more than
  /// 1e-10 in any element.
  SymplecticTransform(Matrix matrix, Vector displacement);
  explicit SymplecticTransform(Matrix matrix);

  std::size_t n_modes() const { return static_cast<std::size_t>(matrix_.rows() / 2); }
  const Matrix& matrix() const { return matrix_; }
  const Vector& displacement() const { return displacement_; }

  static SymplecticTransform identity(std::size_t n_modes);

 private:
  Matrix matrix_;
  Vector displacement_;
};

/// Largest elementwise deviation of S Omega S^T from Omega.
double symplectic_residual(const Matrix& s);

/// Beam splitter of transmittance T between `mode_a` (kept/transmitted port)
/// and `mode_b`:
///   a' = sqrt(T) a + sqrt(1-T) b,   b' = sqrt(T) b - sqrt(1-T) a
/// applied identically to x and p.
SymplecticTransform beam_splitter(double transmittance, std::size_t mode_a = 0, std::size_t mode_b = 1,
                                  std::size_t n_modes = 2);

/// (x, p) -> (x cos t - p sin t, x sin t + p cos t).
SymplecticTransform phase_rotation(double theta);

/// (x, p) -> (e^{-r} x, e^{+r} p).
SymplecticTransform squeeze(double r);

SymplecticTransform displacement(double dx, double dp);

/// Lift a single-mode transform onto `mode` of an n-mode system.
SymplecticTransform embed(const SymplecticTransform& single_mode, std::size_t mode, std::size_t n_modes);

/// `outer` after `inner`.
SymplecticTransform compose(const SymplecticTransform& outer, const SymplecticTransform& inner);

/// mean -> S mean + d, cov -> S cov S^T (re-symmetrized).
GaussianState apply(const SymplecticTransform& transform, const GaussianState& state);

/// 2x2 rotation matrix used by phase_rotation.
Matrix2 rotation_matrix(double theta);

}  // namespace sqz
