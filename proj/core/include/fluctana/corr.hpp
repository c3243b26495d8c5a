#ifndef FLUCTANA_CORR_HPP
#define FLUCTANA_CORR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fluctana/ingest.hpp"

namespace fluctana::corr {

/// Sample autocorrelation curve. Moments are global (computed once from the
/// full series), so C(0) = 1 exactly and values are comparable across lags.
/// noise_level is the 1/sqrt(n) scale of an uncorrelated series.
struct AcfCurve {
  std::vector<int> lags;
  std::vector<double> values;
  std::vector<std::size_t> n_eff;  // products averaged at each lag
  double noise_level = 0.0;
};

/// Correlation of fluctuations with later (tau > 0) or earlier (tau < 0)
/// squared fluctuations, lags symmetric about zero. noise_band is the 95th
/// percentile of |L| over shuffle surrogates.
struct LeverageCurve {
  std::vector<int> lags;
  std::vector<double> values;
  double noise_band = 0.0;
};

/// C_x(tau) = (<x_t x_{t+tau}> - <x>^2) / (<x^2> - <x>^2) for tau in
/// [0, max_lag], products averaged over all valid t. Throws
/// DegenerateDataError on zero variance, std::invalid_argument when the
/// series is shorter than max_lag + 10.
AcfCurve acf(std::span<const double> x, int max_lag);

/// acf applied to |r_t|.
AcfCurve abs_acf(const ingest::ReturnSeries& r, int max_lag);

/// Lags tau >= 1 where |C(tau)| exceeds multiple * noise_level, increasing.
std::vector<int> significant_lags(const AcfCurve& c, double multiple = 3.0);

/// Uniform random permutation (Fisher-Yates), deterministic given seed.
std::vector<double> shuffle(std::span<const double> x, std::uint64_t seed);

/// L(tau) = <r_t [r_{t+tau}]^2> / <[r_{t+tau}]^2>^2 for tau in
/// [-max_lag, max_lag], averages over the valid index window of each lag.
/// The noise band comes from n_shuffles shuffle surrogates.
LeverageCurve leverage(const ingest::ReturnSeries& r, int max_lag,
                       int n_shuffles = 20, std::uint64_t seed = 1);

/// Same, for a bare value sequence.
LeverageCurve leverage_values(std::span<const double> r, int max_lag,
                              int n_shuffles = 20, std::uint64_t seed = 1);

/// -corr(L(tau), L(-tau)) over tau = 1..max_lag: +1 for a perfectly
/// antisymmetric curve, -1 for a perfectly symmetric one. Throws
/// DegenerateDataError with fewer than 5 matched pairs.
double antisymmetry_score(const LeverageCurve& l);

}  // namespace fluctana::corr

#endif  // FLUCTANA_CORR_HPP
