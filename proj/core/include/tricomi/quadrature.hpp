#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tricomi::quad {

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
///
/// Subdivides the interval with the largest error estimate until the total
/// estimate drops below max(abs_tol, rel_tol * |value|) or max_intervals is hit.
AdaptiveResult gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                             double rel_tol = 1e-12, double abs_tol = 0.0,
                             int max_intervals = 2000);

/// Same as gauss_kronrod but throws NumericalError when not converged.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 0.0);

/// Composite Simpson rule over uniformly spaced samples with spacing h.
/// An odd number of intervals closes with the 3/8 rule on the last three.
double simpson(std::span<const double> samples, double h);

/// Running trapezoid integral over (possibly nonuniform) abscissae; out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace tricomi::quad
