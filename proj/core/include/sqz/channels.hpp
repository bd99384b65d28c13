#pragma once

#include <cstddef>

#include "sqz/gaussian_state.hpp"

namespace sqz {

/// Pure-loss channel of efficiency eta on one mode: the mode is mixed with
/// vacuum on a beam splitter of transmittance eta and the other port is
/// discarded. Mean scales by sqrt(eta), the mode block becomes
/// eta C + (1 - eta)/4 I, cross-covariances scale by sqrt(eta).
GaussianState apply_loss(const GaussianState& state, std::size_t mode, double eta);

/// Classical additive Gaussian noise: adds `variance` to both quadratures of
/// `mode` (a random displacement channel).
GaussianState add_noise(const GaussianState& state, std::size_t mode, double variance);

}  // namespace sqz
