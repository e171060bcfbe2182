#include "tricomi/testfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tricomi/error.hpp"
#include "tricomi/gamma.hpp"
#include "tricomi/quadrature.hpp"
#include "tricomi/specfun.hpp"

namespace tricomi::testfun {

namespace {

constexpr double kPhiRelTol = 1e-14;

void check_dimension(int N) {
  if (N < 1) throw DomainError("test function: dimension N must be >= 1");
}

// |S^{N-2}| int_0^pi e^{r (cos th - 1)} cos^j(th) sin^{N-2}(th) d th for j in {0, 1}
double angular_integral(int N, double r, int cos_power) {
  const double weight = N == 2 ? 2.0 : sphere_area(N - 1);
  const int sin_power = N - 2;
  auto f = [r, cos_power, sin_power](double th) {
    const double c = std::cos(th);
    // cos th - 1 = -2 sin^2(th/2)
    const double s2 = std::sin(0.5 * th);
    double v = std::exp(-2.0 * r * s2 * s2);
    if (cos_power == 1) v *= c;
    if (sin_power > 0) v *= std::pow(std::sin(th), sin_power);
    return v;
  };
  return weight * quad::integrate(f, 0.0, std::numbers::pi, kPhiRelTol, 1e-300);
}

}  // namespace

void RadialProfile::validate_allow_zero() const {
  if (!(h > 0.0)) throw ValidationError("radial profile: spacing must be positive");
  if (!(support_radius > 0.0)) throw ValidationError("radial profile: support radius must be positive");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw ValidationError("radial profile: values must be finite and nonnegative");
    }
    if (radius(i) > support_radius * (1.0 + 1e-12) && values[i] != 0.0) {
      throw ValidationError("radial profile: nonzero value outside the support radius");
    }
  }
}

void RadialProfile::validate() const {
  validate_allow_zero();
  if (std::none_of(values.begin(), values.end(), [](double v) { return v > 0.0; })) {
    throw ValidationError("radial profile: data must not vanish everywhere");
  }
}

double bump(double r, double R, int k) {
  if (r >= R) return 0.0;
  const double s = 1.0 - (r / R) * (r / R);
  return std::pow(s, k);
}

RadialProfile bump_profile(double R, int k, double h, double amplitude) {
  if (!(R > 0.0) || !(h > 0.0) || k < 0) throw ValidationError("bump_profile: need R > 0, h > 0, k >= 0");
  RadialProfile p;
  p.h = h;
  p.support_radius = R;
  p.smoothness = k;
  const auto count = static_cast<std::size_t>(std::floor(R / h)) + 2;
  p.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) p.values[i] = amplitude * bump(p.radius(i), R, k);
  return p;
}

RadialProfile zero_profile(double R, int k, double h) {
  RadialProfile p = bump_profile(R, k, h, 1.0);
  std::fill(p.values.begin(), p.values.end(), 0.0);
  return p;
}

double phi_scaled(int N, double r) {
  check_dimension(N);
  if (r < 0.0) throw DomainError("phi: r must be >= 0");
  if (N == 1) return 1.0 + std::exp(-2.0 * r);
  return angular_integral(N, r, 0);
}

double phi(int N, double r) { return phi_scaled(N, r) * std::exp(r); }

double phi_prime(int N, double r) {
  check_dimension(N);
  if (r < 0.0) throw DomainError("phi_prime: r must be >= 0");
  if (N == 1) return 2.0 * std::sinh(r);
  return angular_integral(N, r, 1) * std::exp(r);
}

TestField::TestField(int N, double m) : N_(N), m_(m) {
  check_dimension(N);
  if (!(m >= 0.0)) throw DomainError("TestField: m must be >= 0");
}

double TestField::phi(double r) const { return testfun::phi(N_, r); }
double TestField::phi_prime(double r) const { return testfun::phi_prime(N_, r); }

double TestField::psi(double r, double t) const {
  // combine the scaled factors so that e^{r} e^{-xi} never overflows separately
  return specfun::rho_scaled(m_, t) * phi_scaled(N_, r) * std::exp(r - specfun::xi(m_, t));
}

double TestField::psi_t(double r, double t) const {
  const double rp = t == 0.0 ? specfun::rho_prime_at_zero(m_) : specfun::rho_prime(m_, t);
  return rp * phi(r);
}

std::vector<double> TestField::phi_table(double h, std::size_t count) const {
  std::vector<double> table(count);
  for (std::size_t i = 0; i < count; ++i) table[i] = phi(static_cast<double>(i) * h);
  return table;
}

double phi_laplacian_residual(int N, std::span<const double> r_grid) {
  check_dimension(N);
  if (r_grid.size() < 3) throw DomainError("phi_laplacian_residual: need at least 3 nodes");
  const double h = r_grid[1] - r_grid[0];
  if (!(h > 0.0)) throw DomainError("phi_laplacian_residual: grid must be increasing");
  for (std::size_t i = 1; i < r_grid.size(); ++i) {
    if (std::abs((r_grid[i] - r_grid[i - 1]) - h) > 1e-9 * h) {
      throw DomainError("phi_laplacian_residual: grid must be uniform");
    }
  }
  std::vector<double> f(r_grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = phi(N, r_grid[i]);

  double worst = 0.0;
  if (r_grid[0] == 0.0) {
    const double lap0 = N * 2.0 * (f[1] - f[0]) / (h * h);
    worst = std::abs(lap0 - f[0]) / f[0];
  }
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    const double r = r_grid[i];
    const double d2 = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
    const double d1 = (f[i + 1] - f[i - 1]) / (2.0 * h);
    const double lap = d2 + (N - 1.0) / r * d1;
    worst = std::max(worst, std::abs(lap - f[i]) / f[i]);
  }
  return worst;
}

double c_m_constant(const RadialProfile& f, const RadialProfile& g, int N, double m) {
  check_dimension(N);
  f.validate_allow_zero();
  g.validate_allow_zero();
  if (std::abs(f.h - g.h) > 1e-12 * f.h) throw ValidationError("c_m_constant: f and g grids differ");
  const double a = -specfun::rho_prime_at_zero(m);
  const std::size_t count = std::max(f.values.size(), g.values.size());
  std::vector<double> integrand(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = f.radius(i);
    integrand[i] = (a * f.at(i) + g.at(i)) * phi(N, r) * std::pow(r, N - 1);
  }
  const double value = sphere_area(N) * quad::simpson(integrand, f.h);
  if (!(value > 0.0)) {
    throw ValidationError("c_m_constant: C_m(f, g) is not positive; data must be nonnegative and not vanish everywhere");
  }
  return value;
}

Lemma31Report lemma31_bound_check(int N, double m, double r_exp, std::span<const double> t_grid,
                                  double support_radius) {
  check_dimension(N);
  if (!(r_exp > 1.0)) throw DomainError("lemma31_bound_check: exponent must be > 1");
  if (t_grid.empty()) throw DomainError("lemma31_bound_check: empty time grid");
  Lemma31Report rep;
  const double area = sphere_area(N);
  const double power = (2.0 - r_exp) * (N - 1.0) / 2.0;
  for (double t : t_grid) {
    const double x = specfun::xi(m, t);
    const double upper = x + support_radius;
    // rho cancels between both sides: psi e^{-(r - xi)} / rho = phi_scaled
    auto integrand = [&](double r) {
      const double s = phi_scaled(N, r) * std::exp(r - x);
      return std::pow(s, r_exp) * std::pow(r, N - 1);
    };
    const double integral = area * quad::integrate(integrand, 0.0, upper, 1e-10, 1e-300);
    const double ratio = integral / std::pow(1.0 + x, power);
    const double rhs = std::pow(specfun::rho_scaled(m, t), r_exp) * std::pow(1.0 + x, power);
    rep.t.push_back(t);
    rep.rhs.push_back(rhs);
    rep.ratio.push_back(ratio);
    rep.lhs.push_back(ratio * rhs);
  }
  rep.sup_ratio = *std::max_element(rep.ratio.begin(), rep.ratio.end());
  const std::size_t n = rep.ratio.size();
  const std::size_t tail_begin = n - std::max<std::size_t>(n / 4, 1);
  double tail_max = 0.0;
  double tail_min = std::numeric_limits<double>::infinity();
  rep.tail_nonincreasing = true;
  for (std::size_t i = tail_begin; i < n; ++i) {
    tail_max = std::max(tail_max, rep.ratio[i]);
    tail_min = std::min(tail_min, rep.ratio[i]);
    if (i > tail_begin && rep.ratio[i] > rep.ratio[i - 1] * (1.0 + 1e-12)) rep.tail_nonincreasing = false;
  }
  rep.tail_spread = tail_max / tail_min - 1.0;
  rep.passed = std::isfinite(rep.sup_ratio) && rep.sup_ratio > 0.0 &&
               (rep.tail_nonincreasing || rep.tail_spread <= 0.05);
  return rep;
}

}  // namespace tricomi::testfun
