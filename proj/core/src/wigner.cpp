#include "sqz/wigner.hpp"

#include <cmath>

namespace sqz {

WignerGridSpec WignerGridSpec::around(double mean_x, double mean_p, double sigma_x, double sigma_p, double n_sigmas,
                                      std::size_t n_points) {
  WignerGridSpec s;
  s.x_min = mean_x - n_sigmas * sigma_x;
  s.x_max = mean_x + n_sigmas * sigma_x;
  s.p_min = mean_p - n_sigmas * sigma_p;
  s.p_max = mean_p + n_sigmas * sigma_p;
  s.n_x = n_points;
  s.n_p = n_points;
  s.validate();
  return s;
}

void WignerGridSpec::validate() const {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(p_min) && std::isfinite(p_max))) {
    throw std::invalid_argument("grid window must be finite");
  }
  if (!(x_max > x_min && p_max > p_min)) throw std::invalid_argument("grid window must have positive extent");
  if (n_x < 2 || n_p < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
}

double WignerGridSpec::dx() const { return (x_max - x_min) / static_cast<double>(n_x - 1); }
double WignerGridSpec::dp() const { return (p_max - p_min) / static_cast<double>(n_p - 1); }
double WignerGridSpec::x_at(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }
double WignerGridSpec::p_at(std::size_t j) const { return p_min + static_cast<double>(j) * dp(); }

WignerGrid::WignerGrid(WignerGridSpec spec, Matrix values) : spec_(spec), values_(std::move(values)) {
  spec_.validate();
  if (values_.rows() != static_cast<Eigen::Index>(spec_.n_x) || values_.cols() != static_cast<Eigen::Index>(spec_.n_p)) {
    throw std::invalid_argument("grid values do not match the grid size");
  }
}

double WignerGrid::integral() const { return values_.sum() * cell_area(); }

Vector2 WignerGrid::grid_mean() const {
  const double total = values_.sum();
  if (total == 0.0) throw std::domain_error("grid has zero integral");
  double mx = 0.0;
  double mp = 0.0;
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    for (Eigen::Index j = 0; j < values_.cols(); ++j) {
      mx += values_(i, j) * spec_.x_at(static_cast<std::size_t>(i));
      mp += values_(i, j) * spec_.p_at(static_cast<std::size_t>(j));
    }
  }
  return Vector2(mx / total, mp / total);
}

Matrix2 WignerGrid::grid_cov() const {
  const Vector2 m = grid_mean();
  const double total = values_.sum();
  Matrix2 c = Matrix2::Zero();
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    const double dx = spec_.x_at(static_cast<std::size_t>(i)) - m(0);
    for (Eigen::Index j = 0; j < values_.cols(); ++j) {
      const double dp = spec_.p_at(static_cast<std::size_t>(j)) - m(1);
      const double w = values_(i, j);
      c(0, 0) += w * dx * dx;
      c(0, 1) += w * dx * dp;
      c(1, 1) += w * dp * dp;
    }
  }
  c(1, 0) = c(0, 1);
  return c / total;
}

}  // namespace sqz
