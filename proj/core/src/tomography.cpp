#include "sqz/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sqz/homodyne.hpp"

namespace sqz {
namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double a = kPi * x;
  return std::sin(a) / a;
}

// Band-limited ramp |k| on [-kc, kc], as a kernel in quadrature space.
double ramp_kernel(double s, double kc) {
  const double a = sinc(kc * s);
  return kc * kc * (2.0 * sinc(2.0 * kc * s) - a * a);
}

struct SampleStats {
  double mean = 0.0;
  double variance = 0.0;
};

SampleStats stats_of(std::span<const double> xs) {
  SampleStats st;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) st.mean += x;
  st.mean /= n;
  if (xs.size() > 1) {
    for (double x : xs) st.variance += (x - st.mean) * (x - st.mean);
    st.variance /= n - 1.0;
  }
  return st;
}

// Angular quadrature weights for phases on the half circle: half the gap to
// each neighbour, wrapping by pi. pi / N for equally spaced phases.
std::vector<double> phase_weights(const std::vector<double>& phases) {
  const std::size_t n = phases.size();
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double prev = k == 0 ? phases[n - 1] - kPi : phases[k - 1];
    const double next = k + 1 == n ? phases[0] + kPi : phases[k + 1];
    w[k] = 0.5 * (next - prev);
  }
  return w;
}

struct Binning {
  std::vector<double> edges;
  double width = 0.0;
};

Binning make_binning(double half_width, std::size_t n_bins) {
  Binning b;
  b.width = 2.0 * half_width / static_cast<double>(n_bins);
  b.edges.resize(n_bins + 1);
  for (std::size_t i = 0; i <= n_bins; ++i) b.edges[i] = -half_width + static_cast<double>(i) * b.width;
  return b;
}

// Recentered per-phase statistics shared by the cutoff choice and the
// reconstruction.
struct Prepared {
  Vector2 center = Vector2::Zero();
  std::vector<double> sds;
};

Prepared prepare(const PhaseScanRecord& record) {
  record.validate();
  Prepared p;
  std::vector<double> means(record.phases.size());
  p.sds.resize(record.phases.size());
  for (std::size_t k = 0; k < record.phases.size(); ++k) {
    const SampleStats st = stats_of(record.samples[k]);
    means[k] = st.mean;
    p.sds[k] = std::sqrt(st.variance);
  }
  if (record.phases.size() >= 2) {
    Eigen::MatrixX2d a(static_cast<Eigen::Index>(record.phases.size()), 2);
    Vector b(static_cast<Eigen::Index>(record.phases.size()));
    for (std::size_t k = 0; k < record.phases.size(); ++k) {
      const auto i = static_cast<Eigen::Index>(k);
      a(i, 0) = std::cos(record.phases[k]);
      a(i, 1) = std::sin(record.phases[k]);
      b(i) = means[k];
    }
    p.center = a.colPivHouseholderQr().solve(b);
  }
  return p;
}

// A Gaussian's spectrum along the radial line at phi is the characteristic
// function of the phi marginal, so its bandwidth scales as 1 / sigma_phi.
// Matching the cutoff per phase keeps the resolution where the state has
// structure and drops high-frequency sampling noise elsewhere.
double cutoff_for_phase(const Prepared& p, const ReconstructionOptions& options, double bin_width, std::size_t k) {
  if (options.filter_cutoff) return *options.filter_cutoff;
  const double nyquist = 1.0 / (2.0 * bin_width);
  return std::min(0.7 * nyquist, options.kappa / (2.0 * kPi * p.sds[k]));
}

void check_options(const ReconstructionOptions& options) {
  if (options.n_bins < 8) throw std::invalid_argument("need at least 8 histogram bins");
  if (!(options.half_width_sigmas > 0.0)) throw std::invalid_argument("histogram half width must be positive");
  if (options.filter_cutoff && !(*options.filter_cutoff > 0.0)) {
    throw std::invalid_argument("filter cutoff must be positive");
  }
  if (!(options.kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
}

double widest(const Prepared& p) {
  const double sd = *std::max_element(p.sds.begin(), p.sds.end());
  if (!(sd > 0.0)) throw std::invalid_argument("record has zero spread at every phase");
  return sd;
}

}  // namespace

std::size_t PhaseScanRecord::total_samples() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.size();
  return n;
}

void PhaseScanRecord::validate() const {
  if (phases.empty()) throw std::invalid_argument("record has no phases");
  if (samples.size() != phases.size()) throw std::invalid_argument("record needs one sample list per phase");
  for (std::size_t k = 0; k < phases.size(); ++k) {
    if (!(phases[k] >= 0.0 && phases[k] < kPi)) throw std::invalid_argument("phases must lie in [0, pi)");
    if (k > 0 && !(phases[k] > phases[k - 1])) throw std::invalid_argument("phases must be strictly increasing");
    if (samples[k].empty()) throw std::invalid_argument("every phase needs at least one sample");
    for (double s : samples[k]) {
      if (!std::isfinite(s)) throw std::invalid_argument("record contains a non-finite sample");
    }
  }
}

PhaseScanRecord simulate_phase_scan(const GaussianState& state, std::size_t n_phases, std::size_t samples_per_phase,
                                    std::uint64_t seed) {
  if (state.n_modes() != 1) throw std::invalid_argument("phase scans are single-mode");
  if (n_phases < 8) throw std::invalid_argument("a phase scan needs at least 8 phases");
  if (samples_per_phase == 0) throw std::invalid_argument("samples_per_phase must be >= 1");
  PhaseScanRecord rec;
  rec.source = "simulated";
  rec.seed = seed;
  rec.phases.resize(n_phases);
  rec.samples.resize(n_phases);
  for (std::size_t k = 0; k < n_phases; ++k) {
    const double phi = kPi * static_cast<double>(k) / static_cast<double>(n_phases);
    rec.phases[k] = phi;
    const QuadratureMarginal m = homodyne_marginal(state, 0, phi);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    Rng rng(seq);
    std::normal_distribution<double> dist(m.mean, std::sqrt(m.variance));
    auto& out = rec.samples[k];
    out.resize(samples_per_phase);
    for (double& v : out) v = dist(rng);
  }
  return rec;
}

std::vector<double> filter_cutoffs(const PhaseScanRecord& record, const ReconstructionOptions& options) {
  check_options(options);
  const Prepared p = prepare(record);
  const Binning bins = make_binning(options.half_width_sigmas * widest(p), options.n_bins);
  std::vector<double> out(record.phases.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = cutoff_for_phase(p, options, bins.width, k);
  return out;
}

WignerGrid reconstruct_wigner(const PhaseScanRecord& record, const WignerGridSpec& grid,
                              const ReconstructionOptions& options) {
  check_options(options);
  grid.validate();
  if (record.phases.size() < 8) throw std::invalid_argument("reconstruction needs at least 8 phases");
  const Prepared prep = prepare(record);
  const Binning bins = make_binning(options.half_width_sigmas * widest(prep), options.n_bins);
  const double ds = bins.width;
  const auto nb = static_cast<std::ptrdiff_t>(options.n_bins);

  // Filtered projections must cover every grid point, which can lie well
  // outside the histogram window; evaluate them on a zero-padded axis.
  const double reach = std::max(std::abs(grid.x_min - prep.center(0)), std::abs(grid.x_max - prep.center(0))) +
                       std::max(std::abs(grid.p_min - prep.center(1)), std::abs(grid.p_max - prep.center(1)));
  const auto pad = static_cast<std::ptrdiff_t>(std::ceil(reach / ds)) + 1;
  const std::ptrdiff_t n_out = nb + 2 * pad;
  const double s0 = bins.edges[0] + 0.5 * ds - static_cast<double>(pad) * ds;

  std::vector<double> kernel(static_cast<std::size_t>(2 * (nb + pad) + 1));

  const std::vector<double> weights = phase_weights(record.phases);
  Matrix values = Matrix::Zero(static_cast<Eigen::Index>(grid.n_x), static_cast<Eigen::Index>(grid.n_p));
  std::vector<double> shifted;
  std::vector<double> filtered(static_cast<std::size_t>(n_out));
  for (std::size_t k = 0; k < record.phases.size(); ++k) {
    const double c = std::cos(record.phases[k]);
    const double s = std::sin(record.phases[k]);
    const double offset = c * prep.center(0) + s * prep.center(1);
    shifted.assign(record.samples[k].begin(), record.samples[k].end());
    for (double& v : shifted) v -= offset;
    const std::vector<double> density = histogram_density(shifted, bins.edges);

    // Kernel depends only on the integer lag between output point and bin.
    const double cut = cutoff_for_phase(prep, options, ds, k);
    for (std::ptrdiff_t l = -(nb + pad); l <= nb + pad; ++l) {
      kernel[static_cast<std::size_t>(l + nb + pad)] = ramp_kernel(static_cast<double>(l) * ds, cut);
    }

    for (std::ptrdiff_t i = 0; i < n_out; ++i) {
      double acc = 0.0;
      for (std::ptrdiff_t j = 0; j < nb; ++j) {
        const double d = density[static_cast<std::size_t>(j)];
        if (d != 0.0) acc += d * kernel[static_cast<std::size_t>(i - pad - j + nb + pad)];
      }
      filtered[static_cast<std::size_t>(i)] = acc * ds;
    }

    for (std::size_t ix = 0; ix < grid.n_x; ++ix) {
      const double xs = (grid.x_at(ix) - prep.center(0)) * c;
      for (std::size_t ip = 0; ip < grid.n_p; ++ip) {
        const double u = (xs + (grid.p_at(ip) - prep.center(1)) * s - s0) / ds;
        const auto lo = static_cast<std::ptrdiff_t>(std::floor(u));
        if (lo < 0 || lo + 1 >= n_out) continue;
        const double f = u - static_cast<double>(lo);
        const double q =
            (1.0 - f) * filtered[static_cast<std::size_t>(lo)] + f * filtered[static_cast<std::size_t>(lo + 1)];
        values(static_cast<Eigen::Index>(ix), static_cast<Eigen::Index>(ip)) += weights[k] * q;
      }
    }
  }
  return WignerGrid(grid, std::move(values));
}

ScanMoments moments_from_marginals(std::span<const double> phases, std::span<const double> means,
                                   std::span<const double> variances) {
  const std::size_t n = phases.size();
  if (means.size() != n || variances.size() != n) throw std::invalid_argument("marginal curves differ in length");
  if (n < 3) throw std::invalid_argument("at least 3 phases are needed to fit the moments");
  Eigen::MatrixX2d a(static_cast<Eigen::Index>(n), 2);
  Eigen::MatrixX3d b(static_cast<Eigen::Index>(n), 3);
  Vector ym(static_cast<Eigen::Index>(n));
  Vector yv(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    const double c = std::cos(phases[k]);
    const double s = std::sin(phases[k]);
    a.row(i) << c, s;
    b.row(i) << c * c, 2.0 * c * s, s * s;
    ym(i) = means[k];
    yv(i) = variances[k];
  }
  const auto qr = b.colPivHouseholderQr();
  if (qr.rank() < 3) throw std::invalid_argument("phases do not determine the covariance (need 3 distinct angles)");
  const Eigen::Vector3d v = qr.solve(yv);
  ScanMoments m;
  m.mean = a.colPivHouseholderQr().solve(ym);
  m.cov << v(0), v(1), v(1), v(2);
  return m;
}

ScanMoments moments_from_scan(const PhaseScanRecord& record) {
  record.validate();
  std::vector<double> means(record.phases.size());
  std::vector<double> variances(record.phases.size());
  for (std::size_t k = 0; k < record.phases.size(); ++k) {
    if (record.samples[k].size() < 2) throw std::invalid_argument("variance fit needs >= 2 samples per phase");
    const SampleStats st = stats_of(record.samples[k]);
    means[k] = st.mean;
    variances[k] = st.variance;
  }
  return moments_from_marginals(record.phases, means, variances);
}

std::vector<double> histogram_density(std::span<const double> samples, std::span<const double> edges) {
  if (edges.size() < 2) throw std::invalid_argument("histogram needs at least one bin");
  const std::size_t nb = edges.size() - 1;
  std::vector<double> counts(nb, 0.0);
  for (double v : samples) {
    if (v < edges.front() || v >= edges.back()) continue;
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    counts[static_cast<std::size_t>(it - edges.begin()) - 1] += 1.0;
  }
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < nb; ++i) counts[i] /= n * (edges[i + 1] - edges[i]);
  return counts;
}

namespace {

// Bilinear interpolation of the grid values; zero outside the window.
double interpolate(const WignerGrid& grid, double x, double p) {
  const WignerGridSpec& g = grid.spec();
  const double u = (x - g.x_min) / g.dx();
  const double v = (p - g.p_min) / g.dp();
  if (u < 0.0 || v < 0.0 || u > double(g.n_x - 1) || v > double(g.n_p - 1)) return 0.0;
  const auto i = std::min(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(g.n_x) - 2);
  const auto j = std::min(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(g.n_p) - 2);
  const double fx = u - double(i), fp = v - double(j);
  const Matrix& w = grid.values();
  return (1 - fx) * (1 - fp) * w(i, j) + fx * (1 - fp) * w(i + 1, j) + (1 - fx) * fp * w(i, j + 1) +
         fx * fp * w(i + 1, j + 1);
}

}  // namespace

std::vector<double> project_grid(const WignerGrid& grid, double phase, std::span<const double> edges) {
  if (edges.size() < 2) throw std::invalid_argument("projection needs at least one bin");
  const std::size_t nb = edges.size() - 1;
  const WignerGridSpec& g = grid.spec();
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  // Line integrals along (-s, c) through q (c, s), averaged over a few q per
  // bin. Sampling lines rather than cells avoids aliasing the grid lattice
  // onto the bins.
  const double reach = std::hypot(std::max(std::abs(g.x_min), std::abs(g.x_max)),
                                  std::max(std::abs(g.p_min), std::abs(g.p_max)));
  const double h = 0.5 * std::min(g.dx(), g.dp());
  const auto n_steps = static_cast<int>(std::ceil(reach / h));
  constexpr int kPerBin = 8;
  std::vector<double> out(nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    double acc = 0.0;
    for (int m = 0; m < kPerBin; ++m) {
      const double q = edges[b] + (m + 0.5) / kPerBin * (edges[b + 1] - edges[b]);
      double line = 0.0;
      for (int t = -n_steps; t <= n_steps; ++t) line += interpolate(grid, q * c - t * h * s, q * s + t * h * c);
      acc += line * h;
    }
    out[b] = acc / kPerBin;
  }
  return out;
}

std::vector<double> scan_bin_edges(const PhaseScanRecord& record, std::size_t k,
                                   const ReconstructionOptions& options) {
  check_options(options);
  if (k >= record.phases.size()) throw std::out_of_range("phase index out of range");
  const Prepared p = prepare(record);
  Binning bins = make_binning(options.half_width_sigmas * widest(p), options.n_bins);
  const double offset = std::cos(record.phases[k]) * p.center(0) + std::sin(record.phases[k]) * p.center(1);
  for (double& e : bins.edges) e += offset;
  return bins.edges;
}

std::vector<double> radon_consistency(const PhaseScanRecord& record, const WignerGrid& grid,
                                      const ReconstructionOptions& options) {
  std::vector<double> out(record.phases.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::vector<double> edges = scan_bin_edges(record, k, options);
    const std::vector<double> h = histogram_density(record.samples[k], edges);
    const std::vector<double> q = project_grid(grid, record.phases[k], edges);
    const auto hv = Eigen::Map<const Vector>(h.data(), static_cast<Eigen::Index>(h.size()));
    const auto qv = Eigen::Map<const Vector>(q.data(), static_cast<Eigen::Index>(q.size()));
    const Vector hc = hv.array() - hv.mean();
    const Vector qc = qv.array() - qv.mean();
    const double denom = hc.norm() * qc.norm();
    out[k] = denom > 0.0 ? hc.dot(qc) / denom : 0.0;
  }
  return out;
}

}  // namespace sqz
