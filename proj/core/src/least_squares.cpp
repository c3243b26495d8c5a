#include "fluctana/least_squares.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fluctana::fit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool eval_residuals(const ResidualFn& fn, std::span<const double> params,
                    std::vector<double>& out) {
  try {
    fn(params, out);
  } catch (...) {
    return false;
  }
  for (double r : out)
    if (!std::isfinite(r)) return false;
  return true;
}

double sum_sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

// Solves the symmetric positive (semi)definite system in place; returns false
// when pivoting hits a numerically singular column.
bool solve_spd(std::vector<std::vector<double>>& m, std::vector<double>& rhs) {
  const std::size_t p = rhs.size();
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < p; ++row)
      if (std::fabs(m[row][col]) > std::fabs(m[pivot][col])) pivot = row;
    if (std::fabs(m[pivot][col]) < 1e-300) return false;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t row = col + 1; row < p; ++row) {
      const double f = m[row][col] / m[col][col];
      for (std::size_t k = col; k < p; ++k) m[row][k] -= f * m[col][k];
      rhs[row] -= f * rhs[col];
    }
  }
  for (std::size_t col = p; col-- > 0;) {
    for (std::size_t k = col + 1; k < p; ++k) rhs[col] -= m[col][k] * rhs[k];
    rhs[col] /= m[col][col];
  }
  return true;
}

}  // namespace

LsqResult levenberg_marquardt(const ResidualFn& fn, std::size_t n_residuals,
                              std::span<const double> init,
                              std::span<const double> lower,
                              std::span<const double> upper,
                              const LsqOptions& options) {
  const std::size_t p = init.size();
  if (lower.size() != p || upper.size() != p)
    throw std::invalid_argument("bound/parameter length mismatch");

  auto clamp = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < p; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  };

  LsqResult result;
  result.params.assign(init.begin(), init.end());
  clamp(result.params);

  std::vector<double> residuals(n_residuals);
  if (!eval_residuals(fn, result.params, residuals))
    throw std::invalid_argument("residuals not finite at the initial point");
  double chi2 = sum_sq(residuals);

  std::vector<std::vector<double>> jac(p, std::vector<double>(n_residuals));
  std::vector<double> trial(p), trial_res(n_residuals);
  double damping = options.initial_damping;

  auto numeric_jacobian = [&]() {
    std::vector<double> bumped(result.params);
    std::vector<double> res_h(n_residuals);
    for (std::size_t j = 0; j < p; ++j) {
      double h = 1e-7 * std::max(std::fabs(result.params[j]), 1e-8);
      if (result.params[j] + h > upper[j]) h = -h;  // step inward at bounds
      bumped[j] = result.params[j] + h;
      if (!eval_residuals(fn, bumped, res_h)) {
        bumped[j] = result.params[j] - h;
        h = -h;
        if (!eval_residuals(fn, bumped, res_h)) return false;
      }
      for (std::size_t i = 0; i < n_residuals; ++i)
        jac[j][i] = (res_h[i] - residuals[i]) / h;
      bumped[j] = result.params[j];
    }
    return true;
  };

  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    if (!numeric_jacobian()) break;

    // Normal equations J^T J and gradient J^T r.
    std::vector<std::vector<double>> jtj(p, std::vector<double>(p, 0.0));
    std::vector<double> jtr(p, 0.0);
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = a; b < p; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_residuals; ++i) s += jac[a][i] * jac[b][i];
        jtj[a][b] = jtj[b][a] = s;
      }
      double g = 0.0;
      for (std::size_t i = 0; i < n_residuals; ++i) g += jac[a][i] * residuals[i];
      jtr[a] = g;
    }

    bool stepped = false;
    for (int attempt = 0; attempt < 16; ++attempt) {
      auto damped = jtj;
      for (std::size_t a = 0; a < p; ++a)
        damped[a][a] += damping * std::max(jtj[a][a], 1e-12);
      std::vector<double> step(p);
      for (std::size_t a = 0; a < p; ++a) step[a] = -jtr[a];
      if (!solve_spd(damped, step)) {
        damping *= 10.0;
        continue;
      }
      for (std::size_t a = 0; a < p; ++a) trial[a] = result.params[a] + step[a];
      clamp(trial);

      if (eval_residuals(fn, trial, trial_res)) {
        const double trial_chi2 = sum_sq(trial_res);
        if (trial_chi2 <= chi2) {
          double step_norm = 0.0, param_norm = 0.0;
          for (std::size_t a = 0; a < p; ++a) {
            step_norm += (trial[a] - result.params[a]) * (trial[a] - result.params[a]);
            param_norm += std::max(std::fabs(trial[a]), 1.0) *
                          std::max(std::fabs(trial[a]), 1.0);
          }
          const double improvement = (chi2 - trial_chi2) / std::max(chi2, 1e-300);
          const double damping_used = damping;
          result.params = trial;
          residuals = trial_res;
          chi2 = trial_chi2;
          damping = std::max(damping * 0.3, 1e-12);
          stepped = true;
          // Only near-Gauss-Newton steps count as converged; a tiny heavily
          // damped step says nothing about the minimum.
          if ((improvement < options.ftol && damping_used <= 1e-2) ||
              step_norm < options.xtol * options.xtol * param_norm ||
              chi2 < 1e-28) {
            result.converged = true;
          }
          break;
        }
      }
      damping *= 10.0;
    }
    if (!stepped) {
      // Damping saturated without improvement: local minimum to working
      // precision.
      result.converged = true;
      break;
    }
    if (result.converged) break;
  }
  result.iterations = iter + 1;
  result.chi2 = chi2;

  for (std::size_t a = 0; a < p; ++a)
    if (result.params[a] <= lower[a] || result.params[a] >= upper[a])
      result.at_boundary = true;

  // Linearized covariance at the solution.
  result.stderrs.assign(p, 0.0);
  if (numeric_jacobian()) {
    std::vector<std::vector<double>> jtj(p, std::vector<double>(p, 0.0));
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = a; b < p; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_residuals; ++i) s += jac[a][i] * jac[b][i];
        jtj[a][b] = jtj[b][a] = s;
      }
    const double dof = static_cast<double>(n_residuals > p ? n_residuals - p : 1);
    const double s2 = chi2 / dof;
    // Invert by solving against unit vectors.
    for (std::size_t a = 0; a < p; ++a) {
      auto m = jtj;
      std::vector<double> e(p, 0.0);
      e[a] = 1.0;
      if (solve_spd(m, e) && e[a] > 0.0) result.stderrs[a] = std::sqrt(s2 * e[a]);
    }
  }
  return result;
}

}  // namespace fluctana::fit
