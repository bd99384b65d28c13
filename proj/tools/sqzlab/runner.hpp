#pragma once

#include <iosfwd>

#include "sqzlab/config.hpp"

namespace sqzlab {

/// Runs the configured mode, writes its files under config.out_dir and a
/// short human-readable report to `log`.
void run(const ExperimentConfig& config, std::ostream& log);

void run_reproduce_paper(const ExperimentConfig& config, std::ostream& log);
void run_sweep(const ExperimentConfig& config, std::ostream& log);
void run_tomography(const ExperimentConfig& config, std::ostream& log);
void run_trajectory(const ExperimentConfig& config, std::ostream& log);
void run_compile(const ExperimentConfig& config, std::ostream& log);

}  // namespace sqzlab
