#ifndef FLUCTANA_SYNTH_HPP
#define FLUCTANA_SYNTH_HPP

#include <cstdint>
#include <vector>

namespace fluctana::synth {

/// n i.i.d. standard normal variates, deterministic given seed.
std::vector<double> gaussian(std::size_t n, std::uint64_t seed);

/// Fractional Gaussian noise with Hurst exponent h in (0, 1), unit variance,
/// exact target covariance (circulant embedding of the fGn autocovariance).
/// Deterministic given seed.
std::vector<double> fractional_gaussian_noise(std::size_t n, double h,
                                              std::uint64_t seed);

}  // namespace fluctana::synth

#endif  // FLUCTANA_SYNTH_HPP
