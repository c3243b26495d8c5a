#ifndef FLUCTANA_SCALING_HPP
#define FLUCTANA_SCALING_HPP

#include <span>
#include <vector>

#include "fluctana/fit.hpp"
#include "fluctana/ingest.hpp"

namespace fluctana::scaling {

/// Sums of N consecutive fluctuations, R_{N,t} = sum_{i=0}^{N-1} r_{t+i}.
struct AggregatedSeries {
  int horizon = 1;
  std::vector<double> values;
};

/// Windowed sums over the series. Overlapping windows (the default) keep
/// length - N + 1 values; non-overlapping keep length / N. Throws
/// std::invalid_argument for N < 1 or N >= length/10.
AggregatedSeries aggregate(std::span<const double> r, int horizon,
                           bool overlapping = true);

struct CollapsePoint {
  double u;  // R_N * N^{-1/alpha}
  double p;  // density / central-bin density * N^{1/alpha}
};

/// One aggregation horizon of the scaling-collapse plot. The vertical factor
/// N^{1/alpha} follows the source convention; dividing p by p at u=0 gives
/// the shape-collapsed curve.
struct CollapseCurve {
  int horizon = 1;
  double alpha_used = 2.0;
  std::vector<CollapsePoint> points;
};

/// Builds the rescaled aggregated-density curves for each horizon. horizons
/// must contain 1; alpha in (0, 2]. Throws DegenerateDataError when a
/// horizon's central bin is empty.
std::vector<CollapseCurve> collapse(
    std::span<const double> r, std::span<const int> horizons, double alpha,
    const fit::BinScheme& scheme = fit::BinScheme::log_symmetric(),
    bool overlapping = true);

struct TailFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  double r2 = 0.0;
  int n_points = 0;
};

/// Least-squares slope of log p against log u over u in [u_min, u_max]
/// (positive side; p > 0). A power-law tail of index alpha gives slope
/// -(1 + alpha). Throws DegenerateDataError with fewer than 5 usable points.
TailFit tail_slope(const CollapseCurve& c, double u_min, double u_max);

/// Root-mean-square detrended fluctuation per box size.
struct DfaCurve {
  std::vector<int> scales;
  std::vector<double> fluctuation;
  int detrend_order = 1;
};

/// Detrended fluctuation analysis: cumulative profile of the mean-subtracted
/// series, boxes of each scale taken from both ends, polynomial detrending of
/// the given order per box. Requires length >= 4 * max(scales) and every
/// scale >= detrend_order + 2.
DfaCurve dfa(std::span<const double> x, std::span<const int> scales,
             int detrend_order = 1);

/// Logarithmic scale grid with roughly per_decade points per decade.
std::vector<int> log_scale_grid(int min_scale, int max_scale,
                                int per_decade = 10);

/// Hurst exponent: slope of log F against log N over scales within
/// [scale_min, scale_max]. Needs at least 4 scales in range.
fit::CurveFit hurst_fit(const DfaCurve& d, int scale_min, int scale_max);

struct CrossoverResult {
  bool found = false;
  double scale = 0.0;  // crossover box size
  double h_below = 0.0;
  double h_above = 0.0;
  double improvement = 0.0;  // fractional SSR reduction over a single segment
};

/// Two-segment breakpoint scan of the log-log DFA curve. found is false when
/// the best split does not beat the single-line fit by more than 5%. Needs
/// >= 8 scales spanning at least one decade.
CrossoverResult crossover_scan(const DfaCurve& d);

}  // namespace fluctana::scaling

#endif  // FLUCTANA_SCALING_HPP
