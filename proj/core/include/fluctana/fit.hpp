#ifndef FLUCTANA_FIT_HPP
#define FLUCTANA_FIT_HPP

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fluctana/corr.hpp"

namespace fluctana::fit {

/// How sample values are gathered into density bins.
enum class BinKind {
  linear,         // equal-width bins, one bin centered on zero
  log_symmetric,  // geometric bins mirrored around a linear core bin
};

struct BinScheme {
  BinKind kind = BinKind::linear;
  double width_sigma = 0.1;  // linear width / core half-width, in sample sigmas
  double width_abs = 0.0;    // absolute width; overrides width_sigma when > 0
  int per_decade = 8;        // geometric bins per decade (log_symmetric)

  static BinScheme linear(double width_sigma = 0.1) {
    return {BinKind::linear, width_sigma, 0.0, 8};
  }
  static BinScheme linear_abs(double width) {
    return {BinKind::linear, 0.0, width, 8};
  }
  static BinScheme log_symmetric(int per_decade = 8, double core_sigma = 0.1) {
    return {BinKind::log_symmetric, core_sigma, 0.0, per_decade};
  }
  std::string describe() const;
};

struct Bin {
  double lo;      // inclusive lower edge
  double hi;      // exclusive upper edge
  double center;  // midpoint (linear) or signed geometric mean (log bins)
  double density;
  std::size_t count;

  double width() const { return hi - lo; }
};

/// Binned density estimate: density = count / (n_retained * width), so the
/// densities integrate to one exactly.
struct EmpiricalPdf {
  std::vector<Bin> bins;       // outer empty bins trimmed
  std::size_t total = 0;       // samples offered
  std::size_t discarded = 0;   // out of binnable range (log core underflow)
  BinScheme scheme;

  const Bin* bin_containing(double x) const;  // nullptr when x is out of range
};

/// Throws DegenerateDataError when the sample is degenerate (all equal) or
/// fewer than 10 bins end up nonempty; std::invalid_argument for fewer than
/// 100 samples or a bad scheme.
EmpiricalPdf empirical_pdf(std::span<const double> x, const BinScheme& scheme);

/// A parametric least-squares fit with its goodness diagnostics, all in the
/// space the residuals were formed in (fit_space).
struct CurveFit {
  std::map<std::string, double> params;
  std::map<std::string, double> stderrs;
  double chi2_per_n = 0.0;  // mean squared residual in fit space
  double r2 = 0.0;
  int n_points = 0;
  std::string fit_space;  // "semilog" | "loglog" | "linear"
  int iterations = 0;
  bool converged = false;
  bool at_boundary = false;

  std::string to_json() const;  // flat key-value record
};

/// Thrown when a fit exhausts its iteration budget; carries the last iterate.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, CurveFit last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const CurveFit& last_iterate() const noexcept { return last_; }

 private:
  CurveFit last_;
};

/// Fits G_q(x) = A(q,B) [1-(1-q)Bx^2]^{1/(1-q)} to a binned density by
/// damped least squares on ln density, multi-started over a coarse (q, B)
/// grid. Bins with fewer than min_count samples or zero density are skipped.
/// fixed_q pins the entropic index (its stderr reports as 0).
CurveFit fit_qgaussian(const EmpiricalPdf& pdf,
                       std::optional<std::pair<double, double>> init = std::nullopt,
                       std::optional<double> fixed_q = std::nullopt,
                       std::size_t min_count = 5);

/// Fits C(tau) = [1-(1-q_c) T tau^2]^{1/(1-q_c)} to autocorrelation values
/// on lags in [lag_min, lag_max], least squares on ln C. Lags with
/// non-positive ACF are excluded (warning counted in the returned fit's
/// n_points); fewer than 5 usable lags is an error.
CurveFit fit_qexponential_acf(const corr::AcfCurve& acf, int lag_min,
                              int lag_max);

struct HillEstimate {
  double alpha_hat = 0.0;
  double stderr_ = 0.0;  // alpha_hat / sqrt(k)
  std::size_t k = 0;
};

/// Hill tail-index estimator on the top k order statistics of |x|.
/// Throws DegenerateDataError when X_(k+1) is zero or all tail ratios vanish.
HillEstimate hill_estimate(std::span<const double> x, std::size_t k);

/// k-scan table (the estimator is too unstable for a single auto-chosen k).
std::vector<HillEstimate> hill_scan(std::span<const double> x,
                                    std::span<const std::size_t> ks);

/// chi2_per_n = mean squared residual; r2 about the mean of observed =
/// fitted + residual. r2 is NaN (flagged) when the observations have zero
/// variance.
std::pair<double, double> goodness(std::span<const double> residuals,
                                   std::span<const double> fitted);

}  // namespace fluctana::fit

#endif  // FLUCTANA_FIT_HPP
