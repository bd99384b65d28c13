#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqz/squeezer.hpp"
#include "sqz/types.hpp"

namespace sqzlab {

/// Bad or inconsistent configuration. The message names the file line (or
/// the --set override) that caused it.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kModes{"reproduce-paper", "sweep", "tomography", "trajectory", "compile"};

struct SweepSpec {
  std::string parameter = "transmittance";
  std::vector<double> values;
};

struct TomographySpec {
  std::size_t grid_points = 101;
  double window_sigmas = 6.0;
  std::size_t n_bins = 201;
  double kappa = 3.3;
  std::optional<double> filter_cutoff;
};

struct CompileSpec {
  sqz::Matrix2 matrix = sqz::Matrix2::Identity();
  sqz::Vector2 displacement = sqz::Vector2::Zero();
  /// +infinity runs squeezers in the infinitely squeezed ancilla limit.
  double ancilla_db = std::numeric_limits<double>::infinity();
};

struct ExperimentConfig {
  std::string mode;
  /// Transmittance defaults to 0.25 (6 dB target).
  sqz::ProtocolConfig protocol;
  double ancilla_db = 5.1;
  sqz::ImperfectionModel imperfections = sqz::ImperfectionModel::defaults();
  double input_x = 2.0;
  double input_p = 2.0;

  std::size_t n_shots = 100000;
  std::size_t n_phases = 25;
  std::size_t samples_per_phase = 4000;
  std::size_t bootstrap_batches = 20;
  std::size_t bootstrap_resamples = 200;
  std::uint64_t seed = 1;

  std::vector<double> transmittances{0.75, 0.5, 0.25};
  SweepSpec sweep;
  TomographySpec tomography;
  CompileSpec compile;

  std::string out_dir = "sqzlab_out";
  bool write_record = true;
  bool write_wigner = true;

  /// SHA-256 of the effective configuration (file plus overrides).
  std::string hash;
};

/// Loads a YAML file, applies dotted `key=value` overrides, then --seed and
/// --out. `mode` is the subcommand; a `mode:` key in the file must agree.
ExperimentConfig load_config(const std::string& path, const std::string& mode,
                             const std::vector<std::string>& overrides, std::optional<std::uint64_t> seed,
                             std::optional<std::string> out_dir);

}  // namespace sqzlab
