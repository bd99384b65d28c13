#include "sqz/symplectic.hpp"

#include <cmath>
#include <string>

namespace sqz {
namespace {

constexpr double kSymplecticTolerance = 1e-10;

}  // namespace

SymplecticTransform::SymplecticTransform(Matrix matrix, Vector displacement)
    : matrix_(std::move(matrix)), displacement_(std::move(displacement)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols() || matrix_.rows() % 2 != 0) {
    throw std::invalid_argument("symplectic matrix must be square with even dimension");
  }
  if (displacement_.size() != matrix_.rows()) {
    throw std::invalid_argument("displacement length must match the matrix dimension");
  }
  const double residual = symplectic_residual(matrix_);
  if (!(residual <= kSymplecticTolerance)) {
    throw InvariantError("matrix is not symplectic (max |S Omega S^T - Omega| = " + std::to_string(residual) + ")");
  }
}

SymplecticTransform::SymplecticTransform(Matrix matrix)
    : SymplecticTransform(matrix, Vector::Zero(matrix.rows())) {}

SymplecticTransform SymplecticTransform::identity(std::size_t n_modes) {
  const auto n = static_cast<Eigen::Index>(2 * n_modes);
  return SymplecticTransform(Matrix::Identity(n, n));
}

double symplectic_residual(const Matrix& s) {
  const Matrix omega = symplectic_form(static_cast<std::size_t>(s.rows() / 2));
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
}

SymplecticTransform beam_splitter(double transmittance, std::size_t mode_a, std::size_t mode_b,
                                  std::size_t n_modes) {
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("beam splitter transmittance must lie in [0, 1]");
  }
  if (mode_a == mode_b || mode_a >= n_modes || mode_b >= n_modes) {
    throw std::invalid_argument("beam splitter needs two distinct modes within range");
  }
  const double t = std::sqrt(transmittance);
  const double r = std::sqrt(1.0 - transmittance);
  const auto n = static_cast<Eigen::Index>(2 * n_modes);
  Matrix s = Matrix::Identity(n, n);
  const auto a = static_cast<Eigen::Index>(2 * mode_a);
  const auto b = static_cast<Eigen::Index>(2 * mode_b);
  for (Eigen::Index q = 0; q < 2; ++q) {
    s(a + q, a + q) = t;
    s(a + q, b + q) = r;
    s(b + q, b + q) = t;
    s(b + q, a + q) = -r;
  }
  return SymplecticTransform(std::move(s));
}

Matrix2 rotation_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix2 m;
  m << c, -s, s, c;
  return m;
}

SymplecticTransform phase_rotation(double theta) { return SymplecticTransform(rotation_matrix(theta)); }

SymplecticTransform squeeze(double r) {
  Matrix m = Vector2(std::exp(-r), std::exp(r)).asDiagonal();
  return SymplecticTransform(std::move(m));
}

SymplecticTransform displacement(double dx, double dp) {
  return SymplecticTransform(Matrix::Identity(2, 2), Vector2(dx, dp));
}

SymplecticTransform embed(const SymplecticTransform& single_mode, std::size_t mode, std::size_t n_modes) {
  if (single_mode.n_modes() != 1) throw std::invalid_argument("embed expects a single-mode transform");
  if (mode >= n_modes) throw std::out_of_range("embed: mode index out of range");
  const auto n = static_cast<Eigen::Index>(2 * n_modes);
  const auto i = static_cast<Eigen::Index>(2 * mode);
  Matrix s = Matrix::Identity(n, n);
  s.block(i, i, 2, 2) = single_mode.matrix();
  Vector d = Vector::Zero(n);
  d.segment(i, 2) = single_mode.displacement();
  return SymplecticTransform(std::move(s), std::move(d));
}

SymplecticTransform compose(const SymplecticTransform& outer, const SymplecticTransform& inner) {
  if (outer.n_modes() != inner.n_modes()) throw std::invalid_argument("compose: mode count mismatch");
  return SymplecticTransform(outer.matrix() * inner.matrix(),
                             outer.matrix() * inner.displacement() + outer.displacement());
}

GaussianState apply(const SymplecticTransform& transform, const GaussianState& state) {
  if (transform.n_modes() != state.n_modes()) {
    throw std::invalid_argument("apply: transform acts on " + std::to_string(transform.n_modes()) +
                                " modes but the state has " + std::to_string(state.n_modes()));
  }
  const Matrix& s = transform.matrix();
  return GaussianState(s * state.mean() + transform.displacement(), symmetrized(s * state.cov() * s.transpose()));
}

}  // namespace sqz
