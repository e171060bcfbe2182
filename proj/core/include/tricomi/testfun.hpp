#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tricomi::testfun {

/// Nonnegative radial data sampled on r_i = i * h, compactly supported in [0, R].
struct RadialProfile {
  double h = 0.0;
  std::vector<double> values;
  double support_radius = 1.0;
  int smoothness = 4;

  double radius(std::size_t i) const { return static_cast<double>(i) * h; }
  /// Sample i, zero past the stored samples.
  double at(std::size_t i) const { return i < values.size() ? values[i] : 0.0; }
  /// Throws ValidationError unless values >= 0, vanish beyond R and are not all zero.
  void validate() const;
  /// Same, but allows the all-zero profile (useful for f = 0 or g = 0).
  void validate_allow_zero() const;
};

/// (1 - (r/R)^2)^k inside the ball of radius R, zero outside.
double bump(double r, double R, int k);

/// amplitude * bump(r_i, R, k) on r_i = i h for r_i <= R (plus one trailing zero).
RadialProfile bump_profile(double R, int k, double h, double amplitude = 1.0);
/// The all-zero profile on the same grid conventions.
RadialProfile zero_profile(double R, int k, double h);

/// phi(r) = int_{S^{N-1}} e^{x . w} dw for |x| = r (N >= 2), and e^r + e^{-r} for N = 1.
double phi(int N, double r);
/// e^{-r} phi(r); finite for any r.
double phi_scaled(int N, double r);
/// d phi / dr.
double phi_prime(int N, double r);

/// psi(x, t) = rho(t) phi(|x|) solves psi_tt - t^{2m} Lap psi = 0.
class TestField {
 public:
  TestField(int N, double m);

  int dimension() const { return N_; }
  double tricomi_m() const { return m_; }

  double phi(double r) const;
  double phi_prime(double r) const;
  double psi(double r, double t) const;
  double psi_t(double r, double t) const;

  /// phi on r_i = i h, i = 0..count-1. Immutable once built.
  std::vector<double> phi_table(double h, std::size_t count) const;

 private:
  int N_;
  double m_;
};

/// Max over interior nodes of |phi'' + (N-1)/r phi' - phi| / phi with centered differences.
/// The grid must be uniform; a node at r = 0 uses Lap phi(0) = N phi''(0) with an even ghost node.
double phi_laplacian_residual(int N, std::span<const double> r_grid);

/// C_m(f, g) = |S^{N-1}| int_0^R (a(m) f + g) phi r^{N-1} dr with a(m) = -rho'(0), composite Simpson.
/// f and g must share the spacing h. Throws ValidationError if the result is not positive.
double c_m_constant(const RadialProfile& f, const RadialProfile& g, int N, double m);

struct Lemma31Report {
  std::vector<double> t;
  std::vector<double> lhs;    // |S^{N-1}| int_0^{xi+R} psi^r r^{N-1} dr
  std::vector<double> rhs;    // rho^r e^{r xi} (1 + xi)^{(2-r)(N-1)/2}
  std::vector<double> ratio;  // lhs / rhs
  double sup_ratio = 0.0;
  /// max/min - 1 of the ratio over the last quarter of the grid
  double tail_spread = 0.0;
  bool tail_nonincreasing = false;
  bool passed = false;
};

/// Evaluates the psi^r integral bound on a time grid. The check passes when the ratio is
/// finite and its tail has either stopped increasing or settled within 5 %.
Lemma31Report lemma31_bound_check(int N, double m, double r_exp, std::span<const double> t_grid,
                                  double support_radius = 1.0);

}  // namespace tricomi::testfun
