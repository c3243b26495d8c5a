#include "fluctana/corr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fluctana/errors.hpp"
#include "fluctana/rng.hpp"

namespace fluctana::corr {

namespace {

struct Moments {
  double mean;
  double var;
};

Moments global_moments(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= n;
  return {mean, var};
}

}  // namespace

AcfCurve acf(std::span<const double> x, int max_lag) {
  const std::size_t n = x.size();
  if (max_lag < 0) throw std::invalid_argument("max_lag must be >= 0");
  if (n <= static_cast<std::size_t>(max_lag) + 10)
    throw std::invalid_argument("series too short for requested max_lag");

  const auto [mean, var] = global_moments(x);
  if (!(var > 0.0)) throw DegenerateDataError("zero variance series");

  AcfCurve curve;
  curve.noise_level = 1.0 / std::sqrt(static_cast<double>(n));
  curve.lags.reserve(static_cast<std::size_t>(max_lag) + 1);
  for (int tau = 0; tau <= max_lag; ++tau) {
    const std::size_t m = n - static_cast<std::size_t>(tau);
    double acc = 0.0;
    for (std::size_t t = 0; t < m; ++t) acc += x[t] * x[t + static_cast<std::size_t>(tau)];
    acc /= static_cast<double>(m);
    curve.lags.push_back(tau);
    curve.values.push_back((acc - mean * mean) / var);
    curve.n_eff.push_back(m);
  }
  return curve;
}

AcfCurve abs_acf(const ingest::ReturnSeries& r, int max_lag) {
  return acf(r.abs_values(), max_lag);
}

std::vector<int> significant_lags(const AcfCurve& c, double multiple) {
  std::vector<int> out;
  const double threshold = multiple * c.noise_level;
  for (std::size_t i = 0; i < c.lags.size(); ++i) {
    if (c.lags[i] == 0) continue;  // trivial exceedance
    if (std::fabs(c.values[i]) > threshold) out.push_back(c.lags[i]);
  }
  return out;
}

std::vector<double> shuffle(std::span<const double> x, std::uint64_t seed) {
  std::vector<double> out(x.begin(), x.end());
  Rng rng(seed);
  for (std::size_t i = out.size(); i > 1; --i)
    std::swap(out[i - 1], out[rng.below(i)]);
  return out;
}

namespace {

// Signed-lag leverage without the noise band.
std::vector<double> leverage_raw(std::span<const double> r, int max_lag) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(r.size());
  std::vector<double> values;
  values.reserve(2 * static_cast<std::size_t>(max_lag) + 1);
  for (int tau = -max_lag; tau <= max_lag; ++tau) {
    const std::ptrdiff_t t_lo = std::max<std::ptrdiff_t>(0, -tau);
    const std::ptrdiff_t t_hi = std::min<std::ptrdiff_t>(n - 1, n - 1 - tau);
    const double m = static_cast<double>(t_hi - t_lo + 1);
    double num = 0.0, den = 0.0;
    for (std::ptrdiff_t t = t_lo; t <= t_hi; ++t) {
      const double later = r[static_cast<std::size_t>(t + tau)];
      num += r[static_cast<std::size_t>(t)] * later * later;
      den += later * later;
    }
    num /= m;
    den /= m;
    if (!(den > 0.0)) throw DegenerateDataError("zero second moment in window");
    values.push_back(num / (den * den));
  }
  return values;
}

}  // namespace

LeverageCurve leverage_values(std::span<const double> r, int max_lag,
                              int n_shuffles, std::uint64_t seed) {
  if (max_lag < 1) throw std::invalid_argument("max_lag must be >= 1");
  if (r.size() <= 2 * static_cast<std::size_t>(max_lag) + 10)
    throw std::invalid_argument("series too short for requested max_lag");

  LeverageCurve curve;
  for (int tau = -max_lag; tau <= max_lag; ++tau) curve.lags.push_back(tau);
  curve.values = leverage_raw(r, max_lag);

  // Null scale: pooled |L| percentile over shuffle surrogates.
  std::vector<double> pool;
  pool.reserve(static_cast<std::size_t>(n_shuffles) * (2 * max_lag + 1));
  for (int s = 0; s < n_shuffles; ++s) {
    const std::vector<double> surrogate = shuffle(r, seed + static_cast<std::uint64_t>(s));
    const std::vector<double> lv = leverage_raw(surrogate, max_lag);
    for (std::size_t i = 0; i < lv.size(); ++i)
      if (curve.lags[i] != 0) pool.push_back(std::fabs(lv[i]));
  }
  if (!pool.empty()) {
    std::sort(pool.begin(), pool.end());
    const std::size_t idx =
        std::min(pool.size() - 1,
                 static_cast<std::size_t>(0.95 * static_cast<double>(pool.size())));
    curve.noise_band = pool[idx];
  }
  return curve;
}

LeverageCurve leverage(const ingest::ReturnSeries& r, int max_lag,
                       int n_shuffles, std::uint64_t seed) {
  return leverage_values(r.values(), max_lag, n_shuffles, seed);
}

double antisymmetry_score(const LeverageCurve& l) {
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < l.lags.size(); ++i) {
    if (l.lags[i] <= 0) continue;
    const auto it = std::find(l.lags.begin(), l.lags.end(), -l.lags[i]);
    if (it == l.lags.end()) continue;
    pos.push_back(l.values[i]);
    neg.push_back(l.values[static_cast<std::size_t>(it - l.lags.begin())]);
  }
  if (pos.size() < 5)
    throw DegenerateDataError("need at least 5 matched +/- lag pairs");

  const double n = static_cast<double>(pos.size());
  double mp = 0.0, mn = 0.0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    mp += pos[i];
    mn += neg[i];
  }
  mp /= n;
  mn /= n;
  double sp = 0.0, sn = 0.0, cross = 0.0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    sp += (pos[i] - mp) * (pos[i] - mp);
    sn += (neg[i] - mn) * (neg[i] - mn);
    cross += (pos[i] - mp) * (neg[i] - mn);
  }
  if (!(sp > 0.0) || !(sn > 0.0))
    throw DegenerateDataError("degenerate leverage curve (constant halves)");
  return -cross / std::sqrt(sp * sn);
}

}  // namespace fluctana::corr
