#include "tricomi/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "tricomi/error.hpp"
#include "tricomi/gamma.hpp"

namespace tricomi::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// Orders closer than this to an integer make the reflection form of the series singular.
constexpr double kIntegerGuard = 0.05;

double distance_to_integer(double nu) { return std::abs(nu - std::round(nu)); }

// I_mu(z) by its ascending series; converges quickly for the small z it is used on.
double bessel_i_series(double mu, double z) {
  const double half = 0.5 * z;
  const double q = half * half;
  double term = std::pow(half, mu) * rgamma_fn(mu + 1.0);
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (static_cast<double>(k) + mu));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Route selection for any nonnegative order; returns e^z K_nu(z).
double k_scaled_any(double nu, double z) {
  nu = std::abs(nu);
  if (z < kSeriesZ && distance_to_integer(nu) > kIntegerGuard) return bessel_k_series_scaled(nu, z);
  if (z > kAsymptoticZ) return bessel_k_asymptotic_scaled(nu, z);
  return bessel_k_integral_scaled(nu, z);
}

void check_order(double nu) {
  if (!(nu > 0.0 && nu <= 1.5)) {
    throw DomainError("bessel_k: order " + std::to_string(nu) + " outside (0, 3/2]");
  }
}

void check_argument(double z) {
  if (!(z >= kBesselZMin) || !std::isfinite(z)) {
    throw DomainError("bessel_k: argument " + std::to_string(z) + " below " +
                      std::to_string(kBesselZMin));
  }
}

void check_m(double m) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("Tricomi exponent m must be >= 0");
}

// K_{1-nu}(xi) / K_nu(xi). Using K_{nu+1} = K_{1-nu} + (2 nu / z) K_nu turns
// rho'/rho = 1/t - t^m K_{nu+1}/K_nu into -t^m K_{1-nu}/K_nu with no cancellation.
double k_ratio(const TricomiOrder& ord, double x) {
  return k_scaled_any(1.0 - ord.nu, x) / k_scaled_any(ord.nu, x);
}

}  // namespace

TricomiOrder TricomiOrder::from_m(double m) {
  check_m(m);
  TricomiOrder o;
  o.m = m;
  o.nu = 1.0 / (2.0 * m + 2.0);
  o.mu = m / (m + 1.0);
  o.alpha = 2.0 / (std::pow(2.0 * m + 2.0, o.nu) * gamma_fn(o.nu));
  return o;
}

double xi(double m, double t) {
  check_m(m);
  if (t < 0.0) throw DomainError("xi: t must be >= 0");
  return std::pow(t, m + 1.0) / (m + 1.0);
}

double bessel_k_series_scaled(double nu, double z) {
  const double s = std::sin(nu * kPi);
  const double k = kPi / (2.0 * s) * (bessel_i_series(-nu, z) - bessel_i_series(nu, z));
  return k * std::exp(z);
}

double bessel_k_integral_scaled(double nu, double z) {
  auto integrand = [nu, z](double s) {
    const double sh = std::sinh(0.5 * s);
    return std::exp(-2.0 * z * sh * sh) * std::cosh(nu * s);
  };
  // truncate where the integrand falls below 1e-16 of its value at the origin
  double upper = 0.5;
  while (integrand(upper) > 1e-16) upper += 0.5;

  int n = 16;
  double h = upper / n;
  double sum = 0.5 * (integrand(0.0) + integrand(upper));
  for (int i = 1; i < n; ++i) sum += integrand(i * h);
  double estimate = h * sum;
  for (int level = 0; level < 20; ++level) {
    double mid = 0.0;
    for (int i = 0; i < n; ++i) mid += integrand((i + 0.5) * h);
    sum += mid;
    n *= 2;
    h *= 0.5;
    const double refined = h * sum;
    const bool done = std::abs(refined - estimate) <= 1e-15 * std::abs(refined) && level >= 1;
    estimate = refined;
    if (done) return estimate;
  }
  throw NumericalError("bessel_k: trapezoid rule did not converge");
}

double bessel_k_asymptotic_scaled(double nu, double z) {
  const double four_nu2 = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (four_nu2 - odd * odd) / (k * 8.0 * z);
    if (std::abs(term) >= prev) break;  // divergent tail
    sum += term;
    prev = std::abs(term);
    if (prev <= 1e-17 * std::abs(sum)) break;
  }
  return std::sqrt(kPi / (2.0 * z)) * sum;
}

double bessel_k_scaled(double nu, double z) {
  check_order(nu);
  check_argument(z);
  return k_scaled_any(nu, z);
}

double bessel_k(double nu, double z) { return bessel_k_scaled(nu, z) * std::exp(-z); }

double bessel_k_prime(double nu, double z) {
  check_order(nu);
  check_argument(z);
  const double ks = k_scaled_any(nu, z);
  const double ks1 = k_scaled_any(nu + 1.0, z);
  return (-ks1 + nu / z * ks) * std::exp(-z);
}

double rho_prime_at_zero(double m) {
  const TricomiOrder ord = TricomiOrder::from_m(m);
  return gamma_fn(-ord.nu) / (gamma_fn(ord.nu) * std::pow(2.0 * m + 2.0, 2.0 * ord.nu));
}

double rho_scaled(double m, double t) {
  const TricomiOrder ord = TricomiOrder::from_m(m);
  if (t < 0.0) throw DomainError("rho: t must be >= 0");
  if (t == 0.0) return 1.0;
  const double x = xi(m, t);
  if (x < kBesselZMin) return (1.0 + rho_prime_at_zero(m) * t) * std::exp(x);
  return ord.alpha * std::sqrt(t) * k_scaled_any(ord.nu, x);
}

double rho(double m, double t) {
  if (t == 0.0) {
    check_m(m);
    return 1.0;
  }
  check_m(m);
  if (t < 0.0) throw DomainError("rho: t must be >= 0");
  // e^{-xi} in extended precision: a rounding of xi near xi = 300 alone costs ~1e-13 relative
  const long double x = std::pow(static_cast<long double>(t), static_cast<long double>(m) + 1.0L) /
                        (static_cast<long double>(m) + 1.0L);
  return rho_scaled(m, t) * static_cast<double>(std::exp(-x));
}

double log_ratio(double m, double t) {
  const TricomiOrder ord = TricomiOrder::from_m(m);
  if (!(t > 0.0)) throw DomainError("log_ratio: t must be > 0");
  const double x = xi(m, t);
  if (x < kBesselZMin) {
    const double a = rho_prime_at_zero(m);
    return a / ((1.0 + a * t) * std::pow(t, m));
  }
  return -k_ratio(ord, x);
}

double gamma_coeff(double m, double t) { return -2.0 * std::pow(t, m) * log_ratio(m, t); }

double rho_prime(double m, double t) {
  if (!(t > 0.0)) throw DomainError("rho_prime: t must be > 0 (use rho_prime_at_zero)");
  const double x = xi(m, t);
  if (x < kBesselZMin) return rho_prime_at_zero(m);
  return rho(m, t) * std::pow(t, m) * log_ratio(m, t);
}

RhoEvaluation evaluate_rho(double m, double t) {
  RhoEvaluation e;
  e.t = t;
  if (t == 0.0) {
    e.rho = 1.0;
    e.rho_prime = rho_prime_at_zero(m);
    e.gamma = -2.0 * e.rho_prime;
    e.log_ratio = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  e.rho = rho(m, t);
  e.log_ratio = log_ratio(m, t);
  const double tm = std::pow(t, m);
  e.rho_prime = xi(m, t) < kBesselZMin ? rho_prime_at_zero(m) : e.rho * tm * e.log_ratio;
  e.gamma = -2.0 * tm * e.log_ratio;
  return e;
}

namespace {

double find_threshold(const std::function<bool(double)>& holds, const ThresholdOptions& opt,
                      const char* name) {
  const int n = std::max(opt.grid_points, 2);
  const double log_lo = std::log(opt.t_min);
  const double log_hi = std::log(opt.horizon);
  auto grid = [&](int i) { return std::exp(log_lo + (log_hi - log_lo) * i / (n - 1)); };

  int last_fail = -1;
  for (int i = 0; i < n; ++i) {
    if (!holds(grid(i))) last_fail = i;
  }
  if (last_fail == n - 1) {
    throw NumericalError(std::string("threshold_times: ") + name + " bound fails at the horizon");
  }
  double threshold = opt.t_min;
  if (last_fail >= 0) {
    double lo = grid(last_fail);
    double hi = grid(last_fail + 1);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (holds(mid) ? hi : lo) = mid;
    }
    threshold = hi;
  }

  const double sweep_end = std::min(opt.verify_factor * threshold, opt.horizon);
  const int nv = std::max(opt.verify_points, 2);
  for (int i = 0; i < nv; ++i) {
    const double t = threshold + (sweep_end - threshold) * i / (nv - 1);
    if (!holds(t)) {
      throw NumericalError(std::string("threshold_times: ") + name +
                           " bound violated past the bracketed threshold at t = " +
                           std::to_string(t));
    }
  }
  return threshold;
}

}  // namespace

ThresholdTimes threshold_times(double m, const ThresholdOptions& opt) {
  const TricomiOrder ord = TricomiOrder::from_m(m);
  if (!(opt.t_min > 0.0 && opt.horizon > opt.t_min)) {
    throw DomainError("threshold_times: need 0 < t_min < horizon");
  }
  auto ratio_bound = [m](double t) {
    const double r = -log_ratio(m, t);
    return r >= 0.5 && r <= 1.25;
  };
  auto exp_bound = [m, &ord](double t) {
    const double x = xi(m, t);
    if (x < kBesselZMin) return false;
    const double ks = k_scaled_any(ord.nu, x);
    const double s = x * ks * ks;  // xi K^2 e^{2 xi}
    return s > kPi / 4.0 && s < kPi;
  };
  ThresholdTimes out;
  out.half_fivefourths = find_threshold(ratio_bound, opt, "log-ratio");
  out.exp_bound = find_threshold(exp_bound, opt, "exponential");
  return out;
}

}  // namespace tricomi::specfun
