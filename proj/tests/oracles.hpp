// Test-only reference implementations. Everything here is deliberately
// independent of the library code paths it is used to check: plain adaptive
// Simpson instead of the segmented Gauss-Legendre engine, direct O(n tau)
// sums instead of the library ACF, inverse-CDF sampling for Pareto tails.
#ifndef FLUCTANA_TESTS_ORACLES_HPP
#define FLUCTANA_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace oracles {

// Adaptive Simpson on [a, b].
double simpson(const std::function<double(double)>& f, double a, double b,
               double tol = 1e-12, int depth = 28);

// Integral of f over the whole real line by mapping tails through x = t/(1-t^2).
double simpson_real_line(const std::function<double(double)>& f,
                         double tol = 1e-12);

// Integral of f over [L, inf) when f(x) ~ c x^{-p}, p > 1: the substitution
// u = x^{1-p} makes the integrand bounded and smooth at u = 0.
double power_tail_integral(const std::function<double(double)>& f, double p,
                           double L, double tol = 1e-12);

// Mass of an even density with power-law tails ~ |x|^{-p}: Simpson body on
// [0, body_limit], substituted tail beyond.
double even_density_mass(const std::function<double(double)>& f, double p,
                         double body_limit, double tol = 1e-12);

// Gaussian density with variance sigma2.
inline double gaussian_pdf(double x, double sigma2) {
  return std::exp(-x * x / (2.0 * sigma2)) / std::sqrt(2.0 * M_PI * sigma2);
}

// Closed-form symmetric-stable special cases for CF exp(-a |k|^alpha).
inline double stable_gaussian_case(double x, double a) {
  return std::exp(-x * x / (4.0 * a)) / std::sqrt(4.0 * M_PI * a);
}
inline double stable_cauchy_case(double x, double a) {
  return a / (M_PI * (a * a + x * x));
}
inline double stable_peak(double alpha, double a) {
  return std::tgamma(1.0 + 1.0 / alpha) / (M_PI * std::pow(a, 1.0 / alpha));
}

// Unnormalized q-Gaussian shape [1-(1-q)Bx^2]^{1/(1-q)}; support-aware.
double qgauss_shape(double q, double b, double x);

// Normalization constant by quadrature of the shape (no Gamma functions).
double qgauss_normalization_by_quadrature(double q, double b);

// CDF of the q-Gaussian by quadrature, exploiting symmetry about zero.
double qgauss_cdf_by_quadrature(double q, double b, double x);

// Two-sided Kolmogorov-Smirnov distance between a sample and a CDF evaluated
// at the sorted sample points (cdf_at_sorted[i] = F(x_(i))).
double ks_distance(std::span<const double> cdf_at_sorted);

// KS distance of a sample against the q-Gaussian CDF, with the per-point CDF
// built incrementally so n = 1e5 stays cheap.
double ks_distance_qgauss(std::vector<double> sample, double q, double b);

// Pareto(alpha) sample with x >= 1, inverse-CDF method.
std::vector<double> pareto_sample(double alpha, std::size_t n, std::uint64_t seed);

// Plain direct autocorrelation (global moments), no shortcuts shared with the
// library implementation.
std::vector<double> reference_acf(std::span<const double> x, int max_lag);

// Straight-line least squares returning (slope, intercept).
std::pair<double, double> line_fit(std::span<const double> x,
                                   std::span<const double> y);

// Deterministic, seedable normal variates for test inputs; independent of
// the library Rng (different algorithm: std::normal_distribution).
std::vector<double> std_normal_sample(std::size_t n, std::uint64_t seed);

}  // namespace oracles

#endif  // FLUCTANA_TESTS_ORACLES_HPP
