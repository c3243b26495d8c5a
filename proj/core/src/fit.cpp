#include "fluctana/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "fluctana/dist.hpp"
#include "fluctana/errors.hpp"
#include "fluctana/least_squares.hpp"

namespace fluctana::fit {

namespace {

double sample_std(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / n);
}

std::string format_sig(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CurveFit from_lsq(const LsqResult& lsq, std::span<const std::string> names) {
  CurveFit fit;
  for (std::size_t i = 0; i < names.size(); ++i) {
    fit.params[names[i]] = lsq.params[i];
    fit.stderrs[names[i]] = lsq.stderrs[i];
  }
  fit.iterations = lsq.iterations;
  fit.converged = lsq.converged;
  fit.at_boundary = lsq.at_boundary;
  return fit;
}

}  // namespace

std::string BinScheme::describe() const {
  std::ostringstream os;
  if (kind == BinKind::linear) {
    os << "linear(";
    if (width_abs > 0.0)
      os << "width=" << width_abs;
    else
      os << "width=" << width_sigma << "*sigma";
    os << ")";
  } else {
    os << "log-symmetric(per_decade=" << per_decade << ", core=" << width_sigma
       << "*sigma)";
  }
  return os.str();
}

const Bin* EmpiricalPdf::bin_containing(double x) const {
  for (const Bin& b : bins)
    if (x >= b.lo && x < b.hi) return &b;
  return nullptr;
}

EmpiricalPdf empirical_pdf(std::span<const double> x, const BinScheme& scheme) {
  if (x.size() < 100)
    throw std::invalid_argument("need at least 100 samples to bin a density");

  EmpiricalPdf out;
  out.total = x.size();
  out.scheme = scheme;

  const double sigma = sample_std(x);
  if (!(sigma > 0.0)) throw DegenerateDataError("degenerate sample: zero spread");

  if (scheme.kind == BinKind::linear) {
    const double w = scheme.width_abs > 0.0 ? scheme.width_abs
                                            : scheme.width_sigma * sigma;
    if (!(w > 0.0)) throw std::invalid_argument("bin width must be positive");
    // Bin j covers [(j-1/2) w, (j+1/2) w); j = 0 is centered on zero.
    auto index_of = [&](double v) {
      return static_cast<long>(std::floor(v / w + 0.5));
    };
    long j_min = 0, j_max = 0;
    for (double v : x) {
      j_min = std::min(j_min, index_of(v));
      j_max = std::max(j_max, index_of(v));
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(j_max - j_min + 1), 0);
    for (double v : x) ++counts[static_cast<std::size_t>(index_of(v) - j_min)];
    const double norm = static_cast<double>(x.size()) * w;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const double center = static_cast<double>(j_min + static_cast<long>(i)) * w;
      out.bins.push_back({center - 0.5 * w, center + 0.5 * w, center,
                          static_cast<double>(counts[i]) / norm, counts[i]});
    }
  } else {
    const double u0 = scheme.width_sigma * sigma;  // core half-width
    if (!(u0 > 0.0) || scheme.per_decade < 1)
      throw std::invalid_argument("bad log-symmetric scheme");
    const double g = std::pow(10.0, 1.0 / scheme.per_decade);
    double max_abs = 0.0;
    for (double v : x) max_abs = std::max(max_abs, std::fabs(v));
    std::vector<double> edges{u0};
    while (edges.back() <= max_abs) edges.push_back(edges.back() * g);
    const std::size_t m_bins = edges.size() - 1;  // geometric bins per sign

    std::vector<std::size_t> pos(std::max<std::size_t>(m_bins, 1), 0);
    std::vector<std::size_t> neg(pos.size(), 0);
    std::size_t core = 0;
    for (double v : x) {
      const double av = std::fabs(v);
      if (av < u0) {
        ++core;
        continue;
      }
      std::size_t m =
          static_cast<std::size_t>(std::log(av / u0) / std::log(g));
      if (m >= m_bins) m = m_bins - 1;  // fp guard at the outermost edge
      (v >= 0.0 ? pos : neg)[m] += 1;
    }
    const double n = static_cast<double>(x.size());
    for (std::size_t m = m_bins; m-- > 0;) {
      const double lo = edges[m], hi = edges[m + 1];
      out.bins.push_back({-hi, -lo, -std::sqrt(lo * hi),
                          static_cast<double>(neg[m]) / (n * (hi - lo)), neg[m]});
    }
    out.bins.push_back(
        {-u0, u0, 0.0, static_cast<double>(core) / (n * 2.0 * u0), core});
    for (std::size_t m = 0; m < m_bins; ++m) {
      const double lo = edges[m], hi = edges[m + 1];
      out.bins.push_back({lo, hi, std::sqrt(lo * hi),
                          static_cast<double>(pos[m]) / (n * (hi - lo)), pos[m]});
    }
  }

  // Trim empty outer bins.
  auto first = std::find_if(out.bins.begin(), out.bins.end(),
                            [](const Bin& b) { return b.count > 0; });
  auto last = std::find_if(out.bins.rbegin(), out.bins.rend(),
                           [](const Bin& b) { return b.count > 0; });
  out.bins.erase(last.base(), out.bins.end());
  out.bins.erase(out.bins.begin(), first);

  std::size_t nonempty = 0;
  for (const Bin& b : out.bins)
    if (b.count > 0) ++nonempty;
  if (nonempty < 10)
    throw DegenerateDataError("fewer than 10 nonempty bins: unfittable density");
  return out;
}

CurveFit fit_qgaussian(const EmpiricalPdf& pdf,
                       std::optional<std::pair<double, double>> init,
                       std::optional<double> fixed_q, std::size_t min_count) {
  std::vector<double> xs, ln_d;
  for (const Bin& b : pdf.bins) {
    if (b.count < min_count || !(b.density > 0.0)) continue;
    xs.push_back(b.center);
    ln_d.push_back(std::log(b.density));
  }
  if (xs.size() < 10)
    throw DegenerateDataError("fewer than 10 usable bins for the q-Gaussian fit");

  const bool q_free = !fixed_q.has_value();
  const auto model_ln = [](double q, double b, double x) {
    const double a = dist::qgauss_normalization(q, b);
    if (std::fabs(q - 1.0) < 1e-12) return std::log(a) - b * x * x;
    const double bracket = 1.0 - (1.0 - q) * b * x * x;
    if (bracket <= 0.0) throw std::domain_error("outside support");
    return std::log(a) + std::log(bracket) / (1.0 - q);
  };

  // Residuals in semilog space; parameters are (q, B) or (B) with q pinned.
  const auto make_fn = [&](double pinned_q) {
    return [&, pinned_q](std::span<const double> p, std::span<double> res) {
      const double q = q_free ? p[0] : pinned_q;
      const double b = q_free ? p[1] : p[0];
      for (std::size_t i = 0; i < xs.size(); ++i)
        res[i] = model_ln(q, b, xs[i]) - ln_d[i];
    };
  };

  // Peak density anchors the width scale: A(q,B) = sqrt(B) * g(q).
  double peak = 0.0;
  for (const Bin& b : pdf.bins) peak = std::max(peak, b.density);
  const auto b_from_peak = [&](double q) {
    const double g = dist::qgauss_normalization(q, 1.0);
    const double b0 = (peak / g) * (peak / g);
    return std::clamp(b0, 1e-6, 1e6);
  };

  std::vector<std::vector<double>> starts;
  if (q_free) {
    const std::vector<double> q_grid = init ? std::vector<double>{init->first}
                                            : std::vector<double>{1.2, 1.5, 1.9};
    for (double q0 : q_grid) {
      const double b_anchor = init ? init->second : b_from_peak(q0);
      for (double f : {0.5, 1.0, 2.0}) starts.push_back({q0, b_anchor * f});
    }
  } else {
    const double b_anchor = init ? init->second : b_from_peak(*fixed_q);
    for (double f : {0.5, 1.0, 2.0}) starts.push_back({b_anchor * f});
  }

  const std::vector<double> lower = q_free ? std::vector<double>{0.2, 1e-8}
                                           : std::vector<double>{1e-8};
  const std::vector<double> upper = q_free ? std::vector<double>{2.999, 1e8}
                                           : std::vector<double>{1e8};

  std::optional<LsqResult> best;
  const ResidualFn fn = make_fn(fixed_q.value_or(0.0));
  for (const auto& start : starts) {
    try {
      LsqResult r = levenberg_marquardt(fn, xs.size(), start, lower, upper);
      if (!best || r.chi2 < best->chi2) best = r;
    } catch (const std::invalid_argument&) {
      continue;  // start outside the feasible region
    }
  }
  if (!best) throw DegenerateDataError("no feasible q-Gaussian start point");

  CurveFit fit;
  if (q_free) {
    const std::string names[] = {"q", "B"};
    fit = from_lsq(*best, names);
  } else {
    const std::string names[] = {"B"};
    fit = from_lsq(*best, names);
    fit.params["q"] = *fixed_q;
    fit.stderrs["q"] = 0.0;
  }

  std::vector<double> residuals(xs.size()), fitted(xs.size());
  fn(best->params, residuals);
  for (std::size_t i = 0; i < xs.size(); ++i) fitted[i] = ln_d[i] + residuals[i];
  const auto [chi2n, r2] = goodness(residuals, fitted);
  fit.chi2_per_n = chi2n;
  fit.r2 = r2;
  fit.n_points = static_cast<int>(xs.size());
  fit.fit_space = "semilog";
  if (!best->converged)
    throw FitError("q-Gaussian fit exhausted its iteration budget", fit);
  return fit;
}

CurveFit fit_qexponential_acf(const corr::AcfCurve& acf, int lag_min, int lag_max) {
  std::vector<double> taus, ln_c;
  for (std::size_t i = 0; i < acf.lags.size(); ++i) {
    const int tau = acf.lags[i];
    if (tau < lag_min || tau > lag_max) continue;
    if (!(acf.values[i] > 0.0)) continue;  // excluded with warning downstream
    taus.push_back(static_cast<double>(tau));
    ln_c.push_back(std::log(acf.values[i]));
  }
  if (taus.size() < 5)
    throw DegenerateDataError("fewer than 5 usable lags for the ACF fit");

  // C(tau) = [1 - (1-q_c) T tau^2]^{1/(1-q_c)}, decaying branch q_c > 1.
  const ResidualFn fn = [&](std::span<const double> p, std::span<double> res) {
    const double qc = p[0], t = p[1];
    for (std::size_t i = 0; i < taus.size(); ++i) {
      const double bracket = 1.0 + (qc - 1.0) * t * taus[i] * taus[i];
      res[i] = -std::log(bracket) / (qc - 1.0) - ln_c[i];
    }
  };

  std::vector<std::vector<double>> starts;
  for (double q0 : {2.0, 4.0, 6.0}) {
    // Match the first usable lag for a T anchor.
    const double c1 = std::exp(ln_c.front());
    const double tau1 = taus.front();
    const double anchor =
        (std::pow(c1, -(q0 - 1.0)) - 1.0) / ((q0 - 1.0) * tau1 * tau1);
    for (double f : {1.0, 0.25, 4.0})
      starts.push_back({q0, std::clamp(anchor * f, 1e-8, 1e6)});
  }
  const std::vector<double> lower{1.0 + 1e-6, 1e-10};
  const std::vector<double> upper{50.0, 1e8};

  std::optional<LsqResult> best;
  for (const auto& start : starts) {
    LsqResult r = levenberg_marquardt(fn, taus.size(), start, lower, upper);
    if (!best || r.chi2 < best->chi2) best = r;
  }

  const std::string names[] = {"q_c", "T"};
  CurveFit fit = from_lsq(*best, names);
  std::vector<double> residuals(taus.size()), fitted(taus.size());
  fn(best->params, residuals);
  for (std::size_t i = 0; i < taus.size(); ++i) fitted[i] = ln_c[i] + residuals[i];
  const auto [chi2n, r2] = goodness(residuals, fitted);
  fit.chi2_per_n = chi2n;
  fit.r2 = r2;
  fit.n_points = static_cast<int>(taus.size());
  fit.fit_space = "semilog";
  if (!best->converged)
    throw FitError("q-exponential ACF fit exhausted its iteration budget", fit);
  return fit;
}

HillEstimate hill_estimate(std::span<const double> x, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (2 * k >= x.size())
    throw std::invalid_argument("Hill estimator needs k < n/2");

  std::vector<double> mags(x.size());
  std::transform(x.begin(), x.end(), mags.begin(),
                 [](double v) { return std::fabs(v); });
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(k),
                   mags.end(), std::greater<>());
  std::sort(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(k) + 1,
            std::greater<>());

  const double pivot = mags[k];  // X_(k+1)
  if (!(pivot > 0.0))
    throw DegenerateDataError("Hill pivot order statistic is zero");
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(mags[i] / pivot);
  if (!(acc > 0.0))
    throw DegenerateDataError("all tail order statistics tied: no tail slope");

  HillEstimate est;
  est.k = k;
  est.alpha_hat = static_cast<double>(k) / acc;
  est.stderr_ = est.alpha_hat / std::sqrt(static_cast<double>(k));
  return est;
}

std::vector<HillEstimate> hill_scan(std::span<const double> x,
                                    std::span<const std::size_t> ks) {
  std::vector<HillEstimate> out;
  out.reserve(ks.size());
  for (std::size_t k : ks) out.push_back(hill_estimate(x, k));
  return out;
}

std::pair<double, double> goodness(std::span<const double> residuals,
                                   std::span<const double> fitted) {
  if (residuals.size() != fitted.size() || residuals.size() < 2)
    throw std::invalid_argument("goodness needs matched inputs of length >= 2");
  const double n = static_cast<double>(residuals.size());

  double ss_res = 0.0;
  for (double r : residuals) ss_res += r * r;

  double mean_obs = 0.0;
  for (std::size_t i = 0; i < residuals.size(); ++i)
    mean_obs += fitted[i] + residuals[i];
  mean_obs /= n;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    const double d = fitted[i] + residuals[i] - mean_obs;
    ss_tot += d * d;
  }

  const double chi2_per_n = ss_res / n;
  const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot
                                 : std::numeric_limits<double>::quiet_NaN();
  return {chi2_per_n, r2};
}

std::string CurveFit::to_json() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  auto emit = [&](const std::string& key, const std::string& value, bool quote) {
    if (!first) os << ",";
    first = false;
    os << "\"" << key << "\":";
    if (quote)
      os << "\"" << value << "\"";
    else
      os << value;
  };
  for (const auto& [name, value] : params) emit(name, format_sig(value), false);
  for (const auto& [name, value] : stderrs)
    emit(name + "_stderr", format_sig(value), false);
  emit("chi2_per_n", format_sig(chi2_per_n), false);
  emit("r2", format_sig(r2), false);
  emit("n_points", std::to_string(n_points), false);
  emit("fit_space", fit_space, true);
  emit("iterations", std::to_string(iterations), false);
  emit("converged", converged ? "true" : "false", false);
  emit("at_boundary", at_boundary ? "true" : "false", false);
  os << "}";
  return os.str();
}

}  // namespace fluctana::fit
