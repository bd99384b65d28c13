#pragma once

#include <cstddef>

#include "sqz/types.hpp"

namespace sqz {

/// Rectangular phase-space window sampled on an n_x by n_p node grid that
/// includes both end points.
struct WignerGridSpec {
  double x_min = -3.0;
  double x_max = 3.0;
  double p_min = -3.0;
  double p_max = 3.0;
  std::size_t n_x = 101;
  std::size_t n_p = 101;

  /// Window of +-n_sigmas standard deviations around (mean_x, mean_p).
  static WignerGridSpec around(double mean_x, double mean_p, double sigma_x, double sigma_p, double n_sigmas,
                               std::size_t n_points);

  void validate() const;
  double dx() const;
  double dp() const;
  double x_at(std::size_t i) const;
  double p_at(std::size_t j) const;
};

/// Wigner function values on a grid; values(i, j) is W(x_i, p_j).
class WignerGrid {
 public:
  WignerGrid(WignerGridSpec spec, Matrix values);

  const WignerGridSpec& spec() const { return spec_; }
  const Matrix& values() const { return values_; }

  double cell_area() const { return spec_.dx() * spec_.dp(); }
  /// Sum of values times cell area.
  double integral() const;
  double peak() const { return values_.maxCoeff(); }

  /// First and second moments of the grid treated as a density (normalized
  /// by its integral).
  Vector2 grid_mean() const;
  Matrix2 grid_cov() const;

 private:
  WignerGridSpec spec_;
  Matrix values_;
};

}  // namespace sqz
