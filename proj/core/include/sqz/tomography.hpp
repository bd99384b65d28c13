#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqz/gaussian_state.hpp"
#include "sqz/wigner.hpp"

namespace sqz {

/// Homodyne readings versus local-oscillator phase.
struct PhaseScanRecord {
  /// Strictly increasing, within [0, pi).
  std::vector<double> phases;
  /// samples[k] holds the readings taken at phases[k].
  std::vector<std::vector<double>> samples;
  std::string source;
  std::uint64_t seed = 0;

  std::size_t total_samples() const;
  void validate() const;
};

/// n_phases equally spaced phases k pi / n_phases; at each, i.i.d. draws
/// from the Gaussian marginal of the quadrature x cos(phi) + p sin(phi).
/// Each phase uses its own generator seeded from (seed, k), so phases can be
/// produced independently.
PhaseScanRecord simulate_phase_scan(const GaussianState& state, std::size_t n_phases, std::size_t samples_per_phase,
                                    std::uint64_t seed);

struct ReconstructionOptions {
  std::size_t n_bins = 201;
  /// Histogram half-width in units of the widest per-phase standard deviation.
  double half_width_sigmas = 6.0;
  /// Hard cutoff of the ramp filter (cycles per quadrature unit), shared by
  /// all phases. Unset picks, per phase, min(0.7 Nyquist,
  /// kappa / (2 pi sigma_phi)) with sigma_phi the sample spread at that phase.
  std::optional<double> filter_cutoff;
  double kappa = 3.3;
};

/// Filtered back-projection: per-phase histograms (recentered on the fitted
/// mean) are convolved with the band-limited ramp kernel on a zero-padded
/// axis and smeared back over the grid.
WignerGrid reconstruct_wigner(const PhaseScanRecord& record, const WignerGridSpec& grid,
                              const ReconstructionOptions& options = {});

/// Per-phase cutoffs reconstruct_wigner uses for this record.
std::vector<double> filter_cutoffs(const PhaseScanRecord& record, const ReconstructionOptions& options = {});

struct ScanMoments {
  Vector2 mean = Vector2::Zero();
  Matrix2 cov = Matrix2::Zero();
};

/// Least-squares fit of the mean fringe m_x cos + m_p sin and of the variance
/// curve Vxx cos^2 + 2 Vxp cos sin + Vpp sin^2. Needs >= 3 distinct phases.
ScanMoments moments_from_marginals(std::span<const double> phases, std::span<const double> means,
                                   std::span<const double> variances);
ScanMoments moments_from_scan(const PhaseScanRecord& record);

/// Line integrals of a grid along phase `phase`, binned on `edges` and
/// divided by bin width (a density over the quadrature value).
std::vector<double> project_grid(const WignerGrid& grid, double phase, std::span<const double> edges);

/// Histogram edges reconstruct_wigner uses for phase k, in absolute
/// quadrature units.
std::vector<double> scan_bin_edges(const PhaseScanRecord& record, std::size_t k,
                                   const ReconstructionOptions& options = {});

/// Per-phase Pearson correlation between the grid's projection and the
/// recorded histogram, on scan_bin_edges.
std::vector<double> radon_consistency(const PhaseScanRecord& record, const WignerGrid& grid,
                                      const ReconstructionOptions& options = {});

/// Empirical density of samples on `edges` (counts / (n * width)).
std::vector<double> histogram_density(std::span<const double> samples, std::span<const double> edges);

}  // namespace sqz
