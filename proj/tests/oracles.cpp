#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracles {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b,
               double tol, int depth) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

double simpson_real_line(const std::function<double(double)>& f, double tol) {
  // x = t / (1 - t^2) maps (-1, 1) onto the real line.
  const auto g = [&](double t) {
    const double d = 1.0 - t * t;
    const double x = t / d;
    const double jac = (1.0 + t * t) / (d * d);
    return f(x) * jac;
  };
  return simpson(g, -1.0 + 1e-12, 1.0 - 1e-12, tol);
}

double power_tail_integral(const std::function<double(double)>& f, double p,
                           double L, double tol) {
  const double upper = std::pow(L, 1.0 - p);
  const double exponent = -1.0 / (p - 1.0);
  const auto g = [&](double u) {
    // g extends continuously to u = 0 (value c/(p-1) for f ~ c x^{-p});
    // clamping a hair inside keeps the endpoint evaluation finite.
    u = std::max(u, 1e-12 * upper);
    const double x = std::pow(u, exponent);
    return f(x) * std::pow(u, -p / (p - 1.0)) / (p - 1.0);
  };
  return simpson(g, 0.0, upper, tol);
}

double even_density_mass(const std::function<double(double)>& f, double p,
                         double body_limit, double tol) {
  return 2.0 * (simpson(f, 0.0, body_limit, tol) +
                power_tail_integral(f, p, body_limit, tol));
}

double qgauss_shape(double q, double b, double x) {
  if (std::fabs(q - 1.0) < 1e-12) return std::exp(-b * x * x);
  const double bracket = 1.0 - (1.0 - q) * b * x * x;
  if (bracket <= 0.0) return 0.0;
  return std::pow(bracket, 1.0 / (1.0 - q));
}

double qgauss_normalization_by_quadrature(double q, double b) {
  const auto shape = [&](double x) { return qgauss_shape(q, b, x); };
  double mass;
  if (q > 1.0 + 1e-9) {
    const double p = 2.0 / (q - 1.0);
    const double scale = 1.0 / std::sqrt((q - 1.0) * b);
    mass = even_density_mass(shape, p, 50.0 * scale, 1e-13);
  } else if (q < 1.0 - 1e-9) {
    const double edge = 1.0 / std::sqrt((1.0 - q) * b);
    mass = 2.0 * simpson(shape, 0.0, edge, 1e-13);
  } else {
    mass = 2.0 * simpson(shape, 0.0, 42.0 / std::sqrt(b), 1e-13);
  }
  return 1.0 / mass;
}

double qgauss_cdf_by_quadrature(double q, double b, double x) {
  const double a = qgauss_normalization_by_quadrature(q, b);
  if (x == 0.0) return 0.5;
  const double ax = std::fabs(x);
  const double half = a * simpson([&](double t) { return qgauss_shape(q, b, t); },
                                  0.0, ax, 1e-13);
  return x > 0.0 ? 0.5 + half : 0.5 - half;
}

double ks_distance(std::span<const double> cdf_at_sorted) {
  const double n = static_cast<double>(cdf_at_sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < cdf_at_sorted.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::fabs(cdf_at_sorted[i] - lo));
    d = std::max(d, std::fabs(hi - cdf_at_sorted[i]));
  }
  return d;
}

double ks_distance_qgauss(std::vector<double> sample, double q, double b) {
  std::sort(sample.begin(), sample.end());
  const double a = qgauss_normalization_by_quadrature(q, b);
  const auto pdf = [&](double t) { return a * qgauss_shape(q, b, t); };

  // Anchor the CDF at zero (symmetry) and accumulate between sorted points.
  const auto first_nonneg = std::lower_bound(sample.begin(), sample.end(), 0.0);
  std::vector<double> cdf(sample.size());
  double running = 0.5;
  double prev = 0.0;
  for (auto it = first_nonneg; it != sample.end(); ++it) {
    running += simpson(pdf, prev, *it, 1e-12);
    prev = *it;
    cdf[static_cast<std::size_t>(it - sample.begin())] = running;
  }
  running = 0.5;
  prev = 0.0;
  for (auto it = std::make_reverse_iterator(first_nonneg); it != sample.rend();
       ++it) {
    running -= simpson(pdf, *it, prev, 1e-12);
    prev = *it;
    cdf[static_cast<std::size_t>(sample.rend() - it) - 1] = running;
  }
  return ks_distance(cdf);
}

std::vector<double> pareto_sample(double alpha, std::size_t n,
                                  std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> out(n);
  for (double& v : out) {
    double u;
    do {
      u = unif(eng);
    } while (u <= 0.0);
    v = std::pow(u, -1.0 / alpha);
  }
  return out;
}

std::vector<double> reference_acf(std::span<const double> x, int max_lag) {
  const std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);

  std::vector<double> out;
  for (int tau = 0; tau <= max_lag; ++tau) {
    double s = 0.0;
    const std::size_t m = n - static_cast<std::size_t>(tau);
    for (std::size_t t = 0; t < m; ++t)
      s += x[t] * x[t + static_cast<std::size_t>(tau)];
    out.push_back((s / static_cast<double>(m) - mean * mean) / var);
  }
  return out;
}

std::pair<double, double> line_fit(std::span<const double> x,
                                   std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("line_fit needs matched inputs");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

std::vector<double> std_normal_sample(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out(n);
  for (double& v : out) v = normal(eng);
  return out;
}

}  // namespace oracles
