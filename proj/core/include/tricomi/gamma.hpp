#pragma once

namespace tricomi {

/// Euler Gamma function for real x, x not a non-positive integer.
///
/// Lanczos approximation (g = 7, nine coefficients) on x >= 1/2 and the
/// reflection formula below that. Relative error is below 1e-13 on (0, 5].
double gamma_fn(double x);

/// 1/Gamma(x); zero at the poles of Gamma.
double rgamma_fn(double x);

/// Surface area |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2) of the unit sphere in R^n (n >= 1).
double sphere_area(int n);

}  // namespace tricomi
