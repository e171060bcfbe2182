#pragma once

// Modified Bessel function K_nu and the decay profile rho(t) of the
// degenerate-speed wave equation rho'' = t^{2m} rho.

namespace tricomi::specfun {

/// Smallest argument accepted by bessel_k; rho switches to its two-term
/// expansion 1 + rho'(0) t where xi(t) falls below it.
inline constexpr double kBesselZMin = 1e-8;

/// Arguments below this use the ascending series, above kAsymptoticZ the Hankel expansion,
/// and the integral representation in between.
inline constexpr double kSeriesZ = 0.5;
inline constexpr double kAsymptoticZ = 30.0;

/// Constants attached to the Tricomi exponent m.
struct TricomiOrder {
  double m = 0.0;
  double nu = 0.5;     // 1 / (2m + 2)
  double mu = 0.0;     // m / (m + 1)
  double alpha = 0.0;  // 2 / ((2m+2)^nu Gamma(nu))

  static TricomiOrder from_m(double m);
};

/// Time map xi(t) = t^{m+1} / (m + 1).
double xi(double m, double t);

/// K_nu(z) for nu in (0, 3/2] and z >= kBesselZMin.
double bessel_k(double nu, double z);
/// e^z K_nu(z), same domain as bessel_k but free of underflow.
double bessel_k_scaled(double nu, double z);
/// dK_nu/dz = -K_{nu+1}(z) + (nu/z) K_nu(z).
double bessel_k_prime(double nu, double z);

// Individual evaluation routes, exposed so the crossovers can be validated.
// They accept any real order and do not range-check it.

/// Ascending series of e^z K_nu(z) via (pi / (2 sin nu pi)) (I_{-nu} - I_nu); nu not an integer.
double bessel_k_series_scaled(double nu, double z);
/// Trapezoid rule on e^z K_nu(z) = int_0^inf exp(-z (cosh s - 1)) cosh(nu s) ds.
double bessel_k_integral_scaled(double nu, double z);
/// Large-argument expansion of e^z K_nu(z), summed until the terms stop decreasing.
double bessel_k_asymptotic_scaled(double nu, double z);

/// rho(t) = alpha_m t^{1/2} K_nu(xi(t)) with rho(0) = 1.
double rho(double m, double t);
/// e^{xi(t)} rho(t); finite where rho itself underflows.
double rho_scaled(double m, double t);
/// rho'(t) for t > 0.
double rho_prime(double m, double t);
/// rho'(0) = Gamma(-nu) / (Gamma(nu) (2m+2)^{2 nu}).
double rho_prime_at_zero(double m);
/// Gamma(t) = -2 rho'(t) / rho(t), t > 0.
double gamma_coeff(double m, double t);
/// rho'(t) / (t^m rho(t)), t > 0; tends to -1 as t grows.
double log_ratio(double m, double t);

struct RhoEvaluation {
  double t = 0.0;
  double rho = 1.0;
  double rho_prime = 0.0;
  double gamma = 0.0;
  double log_ratio = 0.0;  // NaN at t = 0
};

/// All of the above at one time; t = 0 uses rho_prime_at_zero.
RhoEvaluation evaluate_rho(double m, double t);

struct ThresholdOptions {
  double t_min = 1e-6;
  double horizon = 50.0;
  int grid_points = 2000;
  double verify_factor = 10.0;  // verification sweep runs up to verify_factor * threshold
  int verify_points = 4000;
};

/// Times past which the log-ratio and exponential K bounds hold.
struct ThresholdTimes {
  /// Smallest t with 1/2 <= -rho'/(t^m rho) <= 5/4 from there on.
  double half_fivefourths = 0.0;
  /// Smallest t with pi/4 e^{-2 xi} < xi K_nu(xi)^2 < pi e^{-2 xi} from there on.
  double exp_bound = 0.0;
};

/// Bisection on a logarithmic grid followed by a verification sweep.
/// Throws NumericalError when a bound still fails at the horizon or the sweep finds a violation.
ThresholdTimes threshold_times(double m, const ThresholdOptions& opt = {});

}  // namespace tricomi::specfun
