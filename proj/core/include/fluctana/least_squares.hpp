#ifndef FLUCTANA_LEAST_SQUARES_HPP
#define FLUCTANA_LEAST_SQUARES_HPP

#include <functional>
#include <span>
#include <vector>

namespace fluctana::fit {

/// Residual model: fills `residuals` (fixed length) for the given parameter
/// vector. May throw to signal an infeasible point; the optimizer treats that
/// as an infinitely bad trial step.
using ResidualFn =
    std::function<void(std::span<const double> params, std::span<double> residuals)>;

struct LsqOptions {
  int max_iterations = 200;
  double ftol = 1e-14;   // relative chi^2 improvement considered converged
  double xtol = 1e-12;   // relative step size considered converged
  double initial_damping = 1e-3;
};

struct LsqResult {
  std::vector<double> params;
  std::vector<double> stderrs;  // linearized, sqrt of covariance diagonal
  double chi2 = 0.0;            // sum of squared residuals at the solution
  int iterations = 0;
  bool converged = false;
  bool at_boundary = false;  // some parameter pinned to its box bound
};

/// Damped least squares (Levenberg-Marquardt) with numeric forward-difference
/// Jacobian and box bounds enforced by clamping trial steps. Standard errors
/// come from the linearized covariance chi2/(n-p) * (J^T J)^{-1}.
LsqResult levenberg_marquardt(const ResidualFn& fn, std::size_t n_residuals,
                              std::span<const double> init,
                              std::span<const double> lower,
                              std::span<const double> upper,
                              const LsqOptions& options = {});

}  // namespace fluctana::fit

#endif  // FLUCTANA_LEAST_SQUARES_HPP
