#include "fluctana/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fluctana/errors.hpp"

namespace fluctana::scaling {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double ssr = 0.0;
  double r2 = 0.0;
};

LineFit ols(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.ssr = std::max(0.0, syy - fit.slope * sxy);
  if (x.size() > 2)
    fit.slope_stderr = std::sqrt(fit.ssr / (n - 2.0) / sxx);
  fit.r2 = syy > 0.0 ? 1.0 - fit.ssr / syy : 1.0;
  return fit;
}

}  // namespace

AggregatedSeries aggregate(std::span<const double> r, int horizon,
                           bool overlapping) {
  if (horizon < 1) throw std::invalid_argument("aggregation horizon must be >= 1");
  if (10 * static_cast<std::size_t>(horizon) >= r.size())
    throw std::invalid_argument("aggregation horizon too large for series");

  AggregatedSeries out;
  out.horizon = horizon;
  const std::size_t n = static_cast<std::size_t>(horizon);
  if (overlapping) {
    out.values.resize(r.size() - n + 1);
    double window = 0.0;
    for (std::size_t i = 0; i < n; ++i) window += r[i];
    out.values[0] = window;
    for (std::size_t t = 1; t + n <= r.size(); ++t) {
      // Fresh sums every few thousand steps would curb drift, but doubles
      // carry ~1e-16 relative error per step and the windows are short.
      window += r[t + n - 1] - r[t - 1];
      out.values[t] = window;
    }
  } else {
    out.values.reserve(r.size() / n);
    for (std::size_t t = 0; t + n <= r.size(); t += n) {
      double window = 0.0;
      for (std::size_t i = 0; i < n; ++i) window += r[t + i];
      out.values.push_back(window);
    }
  }
  return out;
}

std::vector<CollapseCurve> collapse(std::span<const double> r,
                                    std::span<const int> horizons, double alpha,
                                    const fit::BinScheme& scheme,
                                    bool overlapping) {
  if (!(alpha > 0.0) || !(alpha > 0.0 && alpha <= 2.0))
    throw std::invalid_argument("collapse needs alpha in (0, 2]");
  if (std::find(horizons.begin(), horizons.end(), 1) == horizons.end())
    throw std::invalid_argument("horizons must include N = 1");

  std::vector<CollapseCurve> curves;
  curves.reserve(horizons.size());
  for (int n : horizons) {
    const AggregatedSeries agg = aggregate(r, n, overlapping);
    const fit::EmpiricalPdf pdf = fit::empirical_pdf(agg.values, scheme);
    const fit::Bin* central = pdf.bin_containing(0.0);
    if (!central || central->count == 0)
      throw DegenerateDataError("empty central bin at horizon " + std::to_string(n));

    const double stretch = std::pow(static_cast<double>(n), 1.0 / alpha);
    CollapseCurve curve;
    curve.horizon = n;
    curve.alpha_used = alpha;
    curve.points.reserve(pdf.bins.size());
    for (const fit::Bin& b : pdf.bins) {
      if (b.count == 0) continue;
      curve.points.push_back({b.center / stretch,
                              b.density / central->density * stretch});
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

TailFit tail_slope(const CollapseCurve& c, double u_min, double u_max) {
  if (!(u_min > 0.0) || !(u_max > u_min))
    throw std::invalid_argument("tail range must satisfy 0 < u_min < u_max");
  std::vector<double> lx, ly;
  for (const CollapsePoint& pt : c.points) {
    if (pt.u < u_min || pt.u > u_max || !(pt.p > 0.0)) continue;
    lx.push_back(std::log(pt.u));
    ly.push_back(std::log(pt.p));
  }
  if (lx.size() < 5)
    throw DegenerateDataError("fewer than 5 tail points in range");
  const LineFit line = ols(lx, ly);
  return {line.slope, line.slope_stderr, line.r2, static_cast<int>(lx.size())};
}

DfaCurve dfa(std::span<const double> x, std::span<const int> scales,
             int detrend_order) {
  if (detrend_order < 0) throw std::invalid_argument("detrend order must be >= 0");
  if (scales.empty()) throw std::invalid_argument("no scales given");
  int max_scale = 0;
  for (int s : scales) {
    if (s < detrend_order + 2)
      throw std::invalid_argument("scale " + std::to_string(s) +
                                  " too small for detrend order");
    max_scale = std::max(max_scale, s);
  }
  if (x.size() < 4 * static_cast<std::size_t>(max_scale))
    throw std::invalid_argument("series shorter than 4 * max(scale)");

  // Cumulative profile of the mean-subtracted series.
  const std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> profile(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i] - mean;
    profile[i] = acc;
  }

  const int p = detrend_order + 1;  // polynomial coefficients per box
  std::vector<double> gram(static_cast<std::size_t>(p) * p);
  std::vector<double> rhs(p), coeff(p);

  // Least-squares residual sum of a detrend_order polynomial over one box,
  // using a centered/scaled abscissa for conditioning.
  auto box_ssr = [&](std::size_t start, std::size_t len) {
    for (int a = 0; a < p; ++a) {
      rhs[a] = 0.0;
      for (int b = 0; b < p; ++b) gram[static_cast<std::size_t>(a) * p + b] = 0.0;
    }
    const double half = 0.5 * static_cast<double>(len - 1);
    for (std::size_t i = 0; i < len; ++i) {
      const double t = (static_cast<double>(i) - half) / static_cast<double>(len);
      const double y = profile[start + i];
      double pow_a = 1.0;
      for (int a = 0; a < p; ++a) {
        double pow_b = pow_a;  // t^b, starting at b = a
        for (int b = a; b < p; ++b) {
          gram[static_cast<std::size_t>(a) * p + b] += pow_a * pow_b;
          pow_b *= t;
        }
        rhs[a] += pow_a * y;
        pow_a *= t;
      }
    }
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < a; ++b)
        gram[static_cast<std::size_t>(a) * p + b] =
            gram[static_cast<std::size_t>(b) * p + a];
    // Solve the small normal system by Gaussian elimination with pivoting.
    std::vector<double> m(gram);
    coeff = rhs;
    for (int col = 0; col < p; ++col) {
      int pivot = col;
      for (int row = col + 1; row < p; ++row)
        if (std::fabs(m[static_cast<std::size_t>(row) * p + col]) >
            std::fabs(m[static_cast<std::size_t>(pivot) * p + col]))
          pivot = row;
      for (int k = 0; k < p; ++k)
        std::swap(m[static_cast<std::size_t>(col) * p + k],
                  m[static_cast<std::size_t>(pivot) * p + k]);
      std::swap(coeff[col], coeff[pivot]);
      for (int row = col + 1; row < p; ++row) {
        const double f = m[static_cast<std::size_t>(row) * p + col] /
                         m[static_cast<std::size_t>(col) * p + col];
        for (int k = col; k < p; ++k)
          m[static_cast<std::size_t>(row) * p + k] -=
              f * m[static_cast<std::size_t>(col) * p + k];
        coeff[row] -= f * coeff[col];
      }
    }
    for (int col = p; col-- > 0;) {
      for (int k = col + 1; k < p; ++k)
        coeff[col] -= m[static_cast<std::size_t>(col) * p + k] * coeff[k];
      coeff[col] /= m[static_cast<std::size_t>(col) * p + col];
    }
    double ssr = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      const double t = (static_cast<double>(i) - half) / static_cast<double>(len);
      double fitv = 0.0, pw = 1.0;
      for (int a = 0; a < p; ++a) {
        fitv += coeff[a] * pw;
        pw *= t;
      }
      const double r = profile[start + i] - fitv;
      ssr += r * r;
    }
    return ssr;
  };

  DfaCurve out;
  out.detrend_order = detrend_order;
  for (int s : scales) {
    const std::size_t len = static_cast<std::size_t>(s);
    const std::size_t boxes = n / len;
    double total = 0.0;
    for (std::size_t b = 0; b < boxes; ++b) total += box_ssr(b * len, len);
    for (std::size_t b = 0; b < boxes; ++b)
      total += box_ssr(n - (b + 1) * len, len);
    out.scales.push_back(s);
    out.fluctuation.push_back(
        std::sqrt(total / (2.0 * static_cast<double>(boxes * len))));
  }
  return out;
}

std::vector<int> log_scale_grid(int min_scale, int max_scale, int per_decade) {
  if (min_scale < 2 || max_scale < min_scale || per_decade < 1)
    throw std::invalid_argument("bad scale grid request");
  std::vector<int> scales;
  const double ratio = std::pow(10.0, 1.0 / per_decade);
  double s = min_scale;
  while (s <= static_cast<double>(max_scale) * (1.0 + 1e-12)) {
    const int si = static_cast<int>(std::lround(s));
    if (scales.empty() || si > scales.back()) scales.push_back(si);
    s *= ratio;
  }
  return scales;
}

namespace {

void loglog_points(const DfaCurve& d, int scale_min, int scale_max,
                   std::vector<double>& lx, std::vector<double>& ly) {
  for (std::size_t i = 0; i < d.scales.size(); ++i) {
    if (d.scales[i] < scale_min || d.scales[i] > scale_max) continue;
    if (!(d.fluctuation[i] > 0.0)) continue;
    lx.push_back(std::log(static_cast<double>(d.scales[i])));
    ly.push_back(std::log(d.fluctuation[i]));
  }
}

}  // namespace

fit::CurveFit hurst_fit(const DfaCurve& d, int scale_min, int scale_max) {
  std::vector<double> lx, ly;
  loglog_points(d, scale_min, scale_max, lx, ly);
  if (lx.size() < 4)
    throw DegenerateDataError("need at least 4 scales in range for a Hurst fit");

  const LineFit line = ols(lx, ly);
  fit::CurveFit out;
  out.params["H"] = line.slope;
  out.params["log_intercept"] = line.intercept;
  out.stderrs["H"] = line.slope_stderr;
  out.stderrs["log_intercept"] = 0.0;
  out.chi2_per_n = line.ssr / static_cast<double>(lx.size());
  out.r2 = line.r2;
  out.n_points = static_cast<int>(lx.size());
  out.fit_space = "loglog";
  out.iterations = 1;
  out.converged = true;
  return out;
}

CrossoverResult crossover_scan(const DfaCurve& d) {
  std::vector<double> lx, ly;
  loglog_points(d, 0, std::numeric_limits<int>::max(), lx, ly);
  if (lx.size() < 8)
    throw std::invalid_argument("crossover scan needs at least 8 scales");
  if (lx.back() - lx.front() < std::log(10.0))
    throw std::invalid_argument("crossover scan needs at least one decade of scales");

  const LineFit single = ols(lx, ly);

  CrossoverResult best;
  double best_ssr = std::numeric_limits<double>::infinity();
  for (std::size_t split = 3; split + 3 <= lx.size(); ++split) {
    std::span<const double> lx1(lx.data(), split), ly1(ly.data(), split);
    std::span<const double> lx2(lx.data() + split, lx.size() - split);
    std::span<const double> ly2(ly.data() + split, ly.size() - split);
    const LineFit left = ols(lx1, ly1);
    const LineFit right = ols(lx2, ly2);
    const double ssr = left.ssr + right.ssr;
    if (ssr < best_ssr) {
      best_ssr = ssr;
      best.h_below = left.slope;
      best.h_above = right.slope;
      // Crossover at the intersection of the two fitted lines, clamped to
      // the gap between the bracketing scales when they are near-parallel.
      const double gap_lo = lx[split - 1], gap_hi = lx[split];
      double cross = 0.5 * (gap_lo + gap_hi);
      if (std::fabs(left.slope - right.slope) > 1e-9) {
        const double ix = (right.intercept - left.intercept) /
                          (left.slope - right.slope);
        if (ix > lx.front() && ix < lx.back()) cross = ix;
      }
      best.scale = std::exp(cross);
    }
  }

  best.improvement =
      single.ssr > 0.0 ? 1.0 - best_ssr / single.ssr : 0.0;
  best.found = best.improvement > 0.05;
  return best;
}

}  // namespace fluctana::scaling
