#include "fluctana/dist.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fluctana/errors.hpp"
#include "oracles.hpp"

using namespace fluctana;

TEST_CASE("q-Gaussian pdf closed values") {
  // Gaussian limit: A = sqrt(B/pi).
  CHECK(dist::qgauss_pdf({1.0, 1.0}, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-12));

  // Cauchy-type point q = 2, B = 1: A/(1+x^2) with A = 1/pi.
  for (double x : {0.0, 0.7, 3.0, -12.0}) {
    CHECK(dist::qgauss_pdf({2.0, 1.0}, x) ==
          doctest::Approx(1.0 / (M_PI * (1.0 + x * x))).epsilon(1e-12));
  }

  // Peak equals the normalization constant; index-fund-style parameters.
  const double a149 = dist::qgauss_normalization(1.49, 2.23);
  CHECK(dist::qgauss_pdf({1.49, 2.23}, 0.0) == doctest::Approx(a149).epsilon(1e-14));
  CHECK(a149 == doctest::Approx(oracles::qgauss_normalization_by_quadrature(
                    1.49, 2.23))
                    .epsilon(1e-8));
}

TEST_CASE("q-Gaussian normalization closed form vs quadrature") {
  CHECK(dist::qgauss_normalization(1.0, M_PI) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dist::qgauss_normalization(2.0, 1.0) ==
        doctest::Approx(1.0 / M_PI).epsilon(1e-13));
  CHECK(dist::qgauss_normalization(1.72, 5.9) ==
        doctest::Approx(oracles::qgauss_normalization_by_quadrature(1.72, 5.9))
            .epsilon(1e-8));

  CHECK_THROWS_AS(dist::qgauss_normalization(3.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(dist::qgauss_normalization(1.5, 0.0), std::domain_error);
}

TEST_CASE("q-Gaussian pdf integrates to one across the parameter grid") {
  const double b = 1.3;
  const auto pdf_of = [&](double q) {
    return [q, b](double x) { return dist::qgauss_pdf({q, b}, x); };
  };
  CHECK(oracles::simpson(pdf_of(1.0), -42.0, 42.0, 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-8));
  for (double q : {1.2, 1.49, 1.72, 2.0, 2.5}) {
    const double p = 2.0 / (q - 1.0);
    const double scale = 1.0 / std::sqrt((q - 1.0) * b);
    CHECK(oracles::even_density_mass(pdf_of(q), p, 50.0 * scale) ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
  // Compact-support branch.
  const double edge = 1.0 / std::sqrt(0.5 * 2.0);
  CHECK(oracles::simpson([&](double x) { return dist::qgauss_pdf({0.5, 2.0}, x); },
                         -edge, edge, 1e-12) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("q-Gaussian pdf symmetry and the q -> 1 limit") {
  for (double q : {0.5, 1.0, 1.49, 2.3}) {
    for (double x : {0.3, 1.7, 6.0}) {
      CHECK(dist::qgauss_pdf({q, 0.9}, x) == dist::qgauss_pdf({q, 0.9}, -x));
    }
  }
  // Approach to the Gaussian limit from both sides of the branch.
  for (double x : {0.0, 0.5, 2.0, 4.0}) {
    const double gauss = std::sqrt(0.7 / M_PI) * std::exp(-0.7 * x * x);
    CHECK(dist::qgauss_pdf({1.0, 0.7}, x) == doctest::Approx(gauss).epsilon(1e-12));
    CHECK(dist::qgauss_pdf({1.0 + 1e-9, 0.7}, x) ==
          doctest::Approx(gauss).epsilon(1e-7));
  }
}

TEST_CASE("width relations") {
  CHECK(dist::qgauss_b_from_sigma(1.0, 1.0, dist::WidthRelation::variance) ==
        doctest::Approx(0.5));
  CHECK(dist::qgauss_b_from_sigma(1.0, 1.0, dist::WidthRelation::q_moment) ==
        doctest::Approx(0.5));
  CHECK_THROWS_AS(
      dist::qgauss_b_from_sigma(5.0 / 3.0, 1.0, dist::WidthRelation::variance),
      std::domain_error);
  CHECK_THROWS_AS(
      dist::qgauss_b_from_sigma(0.2, 1.0, dist::WidthRelation::q_moment),
      std::domain_error);

  // Variance relation against the distribution's variance by quadrature.
  const double q = 1.4, b = 2.0;
  const double var = oracles::simpson_real_line(
      [&](double x) { return x * x * dist::qgauss_pdf({q, b}, x); }, 1e-12);
  CHECK(dist::qgauss_b_from_sigma(q, var, dist::WidthRelation::variance) ==
        doctest::Approx(b).epsilon(1e-6));
}

TEST_CASE("stable pdf closed forms") {
  CHECK(dist::stable_pdf({2.0, 1.0}, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(4.0 * M_PI)).epsilon(1e-10));
  CHECK(dist::stable_pdf({1.0, 1.0}, 0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-10));

  // Peak formula Gamma(1+1/alpha)/(pi a^{1/alpha}).
  for (double alpha : {1.2, 1.5, 1.77}) {
    for (double a : {0.5, 1.0, 2.0}) {
      CHECK(dist::stable_pdf({alpha, a}, 0.0) ==
            doctest::Approx(oracles::stable_peak(alpha, a)).epsilon(1e-8));
    }
  }

  // Whole-line agreement with the Gaussian and Cauchy special cases.
  for (double x = 0.0; x <= 20.0; x += 0.37) {
    const double g = dist::stable_pdf({2.0, 1.0}, x);
    const double c = dist::stable_pdf({1.0, 0.8}, x);
    CHECK(std::fabs(g - oracles::stable_gaussian_case(x, 1.0)) <=
          1e-9 + 1e-6 * oracles::stable_gaussian_case(x, 1.0));
    CHECK(std::fabs(c - oracles::stable_cauchy_case(x, 0.8)) <=
          1e-9 + 1e-6 * oracles::stable_cauchy_case(x, 0.8));
  }
}

TEST_CASE("stable pdf symmetry and parameter validation") {
  for (double x : {0.4, 3.0, 17.0})
    CHECK(dist::stable_pdf({1.5, 1.0}, x) == dist::stable_pdf({1.5, 1.0}, -x));
  CHECK_THROWS_AS(dist::stable_pdf({2.2, 1.0}, 0.0), std::domain_error);
  CHECK_THROWS_AS(dist::stable_pdf({1.5, -1.0}, 0.0), std::domain_error);
  CHECK_THROWS_AS(dist::stable_pdf({1.5, 1.0}, 0.0, 1e-2), std::invalid_argument);
  CHECK_THROWS_AS(dist::stable_pdf({1.5, 1.0}, 0.0, 1e-13), std::invalid_argument);
}

TEST_CASE("stable pdf integrates to one (asymptotic tail completion)") {
  // Three-term tail series keeps the analytic completion below 1e-8.
  const auto tail_mass = [](double alpha, double a, double lim) {
    if (alpha == 2.0) return 0.0;
    double mass = 0.0;
    double sign = 1.0;
    double fact = 1.0;
    for (int m = 1; m <= 3; ++m) {
      fact *= m;
      mass += sign * std::tgamma(m * alpha + 1.0) / fact *
              std::sin(0.5 * M_PI * m * alpha) * std::pow(a, m) *
              std::pow(lim, -m * alpha) / (m * alpha);
      sign = -sign;
    }
    return mass / M_PI;
  };

  for (double alpha : {0.8, 1.0, 1.5, 1.77, 2.0}) {
    const double a = 1.0;
    const double lim = 150.0 * std::pow(a, 1.0 / alpha);
    const double body =
        2.0 * oracles::simpson(
                  [&](double x) { return dist::stable_pdf({alpha, a}, x, 1e-9); },
                  0.0, lim, 2e-9, 14);
    CHECK(body + 2.0 * tail_mass(alpha, a, lim) ==
          doctest::Approx(1.0).epsilon(2e-8));
  }
}

TEST_CASE("stable pdf tail law: log-log slope approaches -(alpha+1)") {
  for (double alpha : {0.8, 1.0, 1.5, 1.77}) {
    const double a = 1.0;
    const double unit = std::pow(a, 1.0 / alpha);
    std::vector<double> lx, ly;
    for (double x = 20.0 * unit; x <= 200.0 * unit; x *= 1.25) {
      lx.push_back(std::log(x));
      ly.push_back(std::log(dist::stable_pdf({alpha, a}, x, 1e-9)));
    }
    const auto [slope, intercept] = oracles::line_fit(lx, ly);
    (void)intercept;
    CHECK(slope == doctest::Approx(-(alpha + 1.0)).epsilon(0.05 / (alpha + 1.0)));
  }
}

TEST_CASE("stable pdf nonnegative within tolerance of the peak") {
  for (double alpha : {0.9, 1.3, 1.9}) {
    const double peak = oracles::stable_peak(alpha, 1.0);
    for (double x = 0.0; x <= 60.0; x += 1.7) {
      CHECK(dist::stable_pdf({alpha, 1.0}, x, 1e-9) >= -1e-9 * peak);
    }
  }
}

TEST_CASE("stable sampler: Gaussian case variance, ECF, determinism") {
  const std::size_t n = 100000;

  // alpha = 2: variance equals 2a.
  const auto g = dist::stable_sample({2.0, 0.7}, n, 42);
  double var = 0.0;
  for (double v : g) var += v * v;
  var /= static_cast<double>(n);
  const double se = std::sqrt(2.0) * 2.0 * 0.7 / std::sqrt(static_cast<double>(n));
  CHECK(std::fabs(var / 2.0 - 0.7) < 3.0 * se);

  // alpha = 1.5: empirical characteristic function at k = 1.
  const auto s = dist::stable_sample({1.5, 1.0}, n, 43);
  double ecf = 0.0;
  for (double v : s) ecf += std::cos(v);
  ecf /= static_cast<double>(n);
  CHECK(std::fabs(ecf - std::exp(-1.0)) < 3.0 / std::sqrt(static_cast<double>(n)));

  // Determinism.
  const auto again = dist::stable_sample({1.5, 1.0}, 1000, 43);
  const auto expect = dist::stable_sample({1.5, 1.0}, 1000, 43);
  CHECK(again == expect);
}

TEST_CASE("stable sampler ECF matches exp(-a|k|^alpha) on a small grid") {
  const std::size_t n = 100000;
  for (double alpha : {0.8, 1.0, 1.9}) {
    const double a = 1.3;
    const auto s = dist::stable_sample({alpha, a}, n, 7);
    for (double k : {0.5, 1.0}) {
      double ecf = 0.0;
      for (double v : s) ecf += std::cos(k * v);
      ecf /= static_cast<double>(n);
      CHECK(std::fabs(ecf - std::exp(-a * std::pow(k, alpha))) <
            3.0 / std::sqrt(static_cast<double>(n)));
    }
  }
}

TEST_CASE("q-Gaussian sampler: Gaussian limit and heavy tails") {
  const std::size_t n = 100000;
  const auto g = dist::qgauss_sample(1.0, 0.5, n, 11);
  double mean = 0.0;
  for (double v : g) mean += v;
  mean /= static_cast<double>(n);
  CHECK(std::fabs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));

  const auto heavy = dist::qgauss_sample(1.5, 1.0, n, 12);
  double m2 = 0.0, m4 = 0.0;
  for (double v : heavy) {
    m2 += v * v;
    m4 += v * v * v * v;
  }
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  CHECK(m4 / (m2 * m2) > 3.0);

  CHECK_THROWS_AS(dist::qgauss_sample(0.9, 1.0, 10, 1), std::invalid_argument);
  CHECK(dist::qgauss_sample(1.7, 2.0, 500, 99) ==
        dist::qgauss_sample(1.7, 2.0, 500, 99));
}

TEST_CASE("q-Gaussian sampler passes KS against the quadrature CDF") {
  const std::size_t n = 100000;
  const double critical_1pct = 1.6276 / std::sqrt(static_cast<double>(n));
  int trial = 0;
  for (double q : {1.0, 1.3, 1.7}) {
    const double b = 0.8;
    const auto sample = dist::qgauss_sample(q, b, n, 1000 + trial++);
    CHECK(oracles::ks_distance_qgauss(sample, q, b) < critical_1pct);
  }
}

TEST_CASE("attractor index maps") {
  CHECK(dist::alpha_from_q(1.72) == doctest::Approx((3.0 - 1.72) / 0.72));
  CHECK(dist::alpha_from_q(2.0) == doctest::Approx(1.0));
  CHECK(dist::q_from_alpha(1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(dist::alpha_from_q(5.0 / 3.0), std::domain_error);
  CHECK_THROWS_AS(dist::alpha_from_q(1.2), std::domain_error);
  CHECK_THROWS_AS(dist::q_from_alpha(2.0), std::domain_error);

  for (double q : {1.7 + 1e-6, 1.9, 2.4, 2.99}) {
    CHECK(dist::q_from_alpha(dist::alpha_from_q(q)) ==
          doctest::Approx(q).epsilon(1e-14));
  }
}
