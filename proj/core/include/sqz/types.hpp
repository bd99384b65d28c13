#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sqz {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Vector2 = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;

/// Quadrature variance of the vacuum. Phase space is normalized so that the
/// vacuum standard deviation is 1/2 (hbar = 1/2); every dB figure in the
/// library is referenced to this value.
inline constexpr double kVacuumVariance = 0.25;

inline constexpr double kPi = 3.14159265358979323846;

/// A Gaussian state or transform violated a physical or numerical invariant
/// (uncertainty relation, symplectic condition, non-positive variance).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sqz
