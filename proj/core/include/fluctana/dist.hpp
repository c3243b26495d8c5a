#ifndef FLUCTANA_DIST_HPP
#define FLUCTANA_DIST_HPP

#include <cstdint>
#include <vector>

namespace fluctana::dist {

/// Parameters of the q-Gaussian family
///   G_q(x) = A [1 - (1-q) B x^2]^{1/(1-q)},   q < 3, B > 0,
/// with A the normalization fixed by q and B. Reduces to the Gaussian
/// A exp(-B x^2) as q -> 1; for q < 1 the support is compact.
struct QGaussianParams {
  double q;
  double b;

  void validate() const;
  double normalization() const;  // A(q, B)
};

/// Symmetric zero-location alpha-stable law with characteristic function
/// exp(-a |k|^alpha), 0 < alpha <= 2, a > 0.
struct StableParams {
  double alpha;
  double a;

  void validate() const;
  double peak_density() const;  // closed form Gamma(1+1/alpha)/(pi a^{1/alpha})
};

/// Density of the q-Gaussian at x. Zero outside the compact support when
/// q < 1. Throws std::domain_error on invalid parameters.
double qgauss_pdf(const QGaussianParams& p, double x);

/// Normalization constant A(q, B) in closed Gamma-function form, with the
/// q -> 1 Gaussian limit sqrt(B/pi). Throws std::domain_error for q >= 3
/// (non-normalizable) or B <= 0.
double qgauss_normalization(double q, double b);

/// Which width relation ties B to a second-moment statistic.
enum class WidthRelation {
  variance,  // B = 1 / (sigma^2 (5 - 3q)),   valid for q < 5/3
  q_moment,  // B = 1 / (sigma_q^2 (3q - 1)), valid for q > 1/3
};

double qgauss_b_from_sigma(double q, double sigma_sq,
                           WidthRelation relation = WidthRelation::variance);

/// Density of the symmetric alpha-stable law by cosine-transform quadrature,
///   (1/pi) Integral_0^inf cos(kx) exp(-a k^alpha) dk,
/// segmented at the zeros of the oscillant so the alternating contributions
/// are summed exactly to the envelope cutoff. Guarantees relative error <=
/// tol, down to an absolute floor of a few ULP of the peak density. Throws
/// ConvergenceError (carrying the achieved tolerance) when the estimate
/// cannot be certified, std::invalid_argument for tol outside (1e-12, 1e-3).
double stable_pdf(const StableParams& p, double x, double tol = 1e-10);

/// n i.i.d. symmetric alpha-stable variates (Chambers-Mallows-Stuck
/// transform), deterministic given seed.
std::vector<double> stable_sample(const StableParams& p, std::size_t n,
                                  std::uint64_t seed);

/// n i.i.d. q-Gaussian variates for 1 <= q < 3 (generalized Box-Muller),
/// deterministic given seed. q < 1 (compact support) is unsupported.
std::vector<double> qgauss_sample(double q, double b, std::size_t n,
                                  std::uint64_t seed);

/// Stability index of the Levy attractor for entropic index q in the
/// infinite-variance regime: alpha = (3-q)/(q-1), valid for 5/3 < q < 3.
/// Throws std::domain_error for q <= 5/3 (Gaussian attractor regime).
double alpha_from_q(double q);

/// Inverse map q = (3+alpha)/(1+alpha) for 0 < alpha < 2.
double q_from_alpha(double alpha);

}  // namespace fluctana::dist

#endif  // FLUCTANA_DIST_HPP
