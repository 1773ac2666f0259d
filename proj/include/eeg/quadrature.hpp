#pragma once

#include <cstddef>
#include <functional>

namespace eeg {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;        // estimated absolute error
  std::size_t intervals = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) on a finite interval [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// estimate falls below max(abs_tol, rel_tol * |value|).
QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                double abs_tol = 1e-14, double rel_tol = 1e-13,
                                std::size_t max_intervals = 4000);

}  // namespace eeg
