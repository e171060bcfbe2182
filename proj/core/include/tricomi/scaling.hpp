#pragma once

#include <span>
#include <string>
#include <vector>

#include "tricomi/exponents.hpp"

namespace tricomi {

/// Lifespan law fitted across an epsilon sweep.
///
/// power: least squares of log T on log eps; slope is compared with -theoretical.
/// exponential: least squares of log T on eps^{-(p-1)}; slope is the fitted constant.
struct ScalingFit {
  std::vector<double> eps;
  std::vector<double> T;        // bracket midpoints
  std::vector<double> T_width;  // bracket widths, as error bars
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double theoretical = 0.0;  // law exponent, positive
  exponents::LawKind kind = exponents::LawKind::power;
  /// Quadratic coefficient of log T in the fit abscissa; zero for a straight power law.
  double curvature = 0.0;
  /// Points left out: the largest eps when it sits beyond 3 sigma, and runs that did not blow up.
  std::vector<double> excluded_eps;
  bool partial = false;
  std::vector<std::string> warnings;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double sigma = 0.0;  // residual standard deviation, n - 2 degrees of freedom
};

/// Ordinary least squares; needs at least two points.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

/// Coefficient of x^2 in the least-squares quadratic; needs at least three points.
double quadratic_curvature(std::span<const double> x, std::span<const double> y);

/// Fits T(eps) for the given law kind. The largest eps is dropped when its residual against
/// the fit of the remaining points exceeds 3 sigma of that fit (and 1e-6 in log T). p is used by the exponential
/// kind only. Needs at least three points; fewer marks the fit partial with zero slope.
ScalingFit fit_scaling(std::span<const double> eps, std::span<const double> T,
                       std::span<const double> T_width, exponents::LawKind kind, double p,
                       double theoretical);

}  // namespace tricomi
