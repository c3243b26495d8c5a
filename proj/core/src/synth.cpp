#include "fluctana/synth.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <fftw3.h>

#include "fluctana/rng.hpp"

namespace fluctana::synth {

std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = rng.normal();
  return out;
}

namespace {

// fGn autocovariance at lag k for unit-variance increments.
double fgn_autocov(double k, double h) {
  const double e = 2.0 * h;
  return 0.5 * (std::pow(std::fabs(k + 1.0), e) + std::pow(std::fabs(k - 1.0), e) -
                2.0 * std::pow(std::fabs(k), e));
}

struct FftwPlanGuard {
  fftw_plan plan;
  ~FftwPlanGuard() { fftw_destroy_plan(plan); }
};

}  // namespace

std::vector<double> fractional_gaussian_noise(std::size_t n, double h,
                                              std::uint64_t seed) {
  if (!(h > 0.0) || !(h < 1.0))
    throw std::invalid_argument("Hurst exponent must lie in (0, 1)");
  if (n < 2) throw std::invalid_argument("need n >= 2");

  // Circulant embedding of the covariance over 2n lags. For fGn the
  // eigenvalues are provably nonnegative, so the construction is exact.
  const std::size_t m = 2 * n;
  std::vector<std::complex<double>> buf(m);
  for (std::size_t j = 0; j <= n; ++j)
    buf[j] = fgn_autocov(static_cast<double>(j), h);
  for (std::size_t j = 1; j < n; ++j) buf[m - j] = buf[j];

  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  {
    FftwPlanGuard fwd{fftw_plan_dft_1d(static_cast<int>(m), data, data,
                                       FFTW_FORWARD, FFTW_ESTIMATE)};
    fftw_execute(fwd.plan);
  }

  std::vector<double> lambda(m);
  for (std::size_t j = 0; j < m; ++j) {
    lambda[j] = buf[j].real();
    if (lambda[j] < 0.0) {
      if (lambda[j] < -1e-9) throw std::runtime_error("embedding not psd");
      lambda[j] = 0.0;  // roundoff
    }
  }

  Rng rng(seed);
  buf[0] = std::sqrt(lambda[0]) * rng.normal();
  buf[n] = std::sqrt(lambda[n]) * rng.normal();
  for (std::size_t j = 1; j < n; ++j) {
    const double amp = std::sqrt(0.5 * lambda[j]);
    const std::complex<double> z{amp * rng.normal(), amp * rng.normal()};
    buf[j] = z;
    buf[m - j] = std::conj(z);
  }

  {
    FftwPlanGuard inv{fftw_plan_dft_1d(static_cast<int>(m), data, data,
                                       FFTW_FORWARD, FFTW_ESTIMATE)};
    fftw_execute(inv.plan);
  }

  std::vector<double> out(n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i].real() * norm;
  return out;
}

}  // namespace fluctana::synth
