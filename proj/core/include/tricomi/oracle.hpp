#pragma once

#include <span>
#include <vector>

#include "tricomi/exponents.hpp"
#include "tricomi/scaling.hpp"
#include "tricomi/solver.hpp"

// ODE models of the blow-up mechanisms: the Riccati-type inequality
// H' >= C H^p t^{-beta} and the floored comparison equation for F = int u.

namespace tricomi::oracle {

struct HOdeSpec {
  double C = 1.0;
  double p = 2.0;
  double beta = 0.0;
  double H0 = 1.0;
  double T3 = 1.0;

  /// beta = [(N-1)(m+1) - m](p-1)/2.
  static HOdeSpec from_model(int N, double m, double p, double C, double H0, double T3);
  /// Throws ValidationError unless C > 0, p > 1, H0 > 0 and T3 >= 0 (T3 > 0 when beta > 0).
  void validate() const;
};

/// Blow-up time of H' = C H^p t^{-beta}, H(T3) = H0, from separation of variables;
/// +infinity when the tail integral of s^{-beta} is too small (beta > 1).
double h_ode_blowup_time(const HOdeSpec& spec);

/// The same time by adaptive integration of dt/dtau = t^beta over
/// tau in [0, H0^{1-p} / (C (p-1))], independent of the closed form.
double h_ode_blowup_time_numeric(const HOdeSpec& spec, double rel_tol = 1e-12);

/// Law implied by the closed form with H0 proportional to eps:
/// power with exponent (p-1)/(1-beta) for beta < 1, exponential with p - 1 at beta = 1.
/// Throws DomainError for p above tricomi_p_crit(N, m).
exponents::LifespanLaw h_ode_scaling_exponent(int N, double m, double p);

struct FOdeSpec {
  double A = 1.0;
  double q = 2.0;
  double k = 0.0;
  double floor_B = 0.0;
  double floor_a = 0.0;
  double F0 = 1.0;
  double F0p = 0.0;
  double t_start = 0.0;

  /// k = N(q-1)(m+1), floor_a = 2 - ((m+1)(N-1)(p-2) - m p)/2,
  /// floor_B = eps^p, F0 = F0p = eps.
  static FOdeSpec from_model(int N, double m, double p, double q, double eps, double A = 1.0);
  void validate() const;
};

struct FOdeOptions {
  double t_max = 1e300;
  /// Blow-up once F exceeds threshold times the envelope max(1, F0 + F0p t, B (1+t)^a).
  double threshold = 1e12;
  double rel_tol = 1e-10;
};

/// Integrates F'' = A max(F, B (1+t)^a)^q (1+t)^{-k} with Dormand-Prince.
/// The bracket runs from the last step with F below threshold/10 times the envelope to the trigger.
solver::BlowupReport f_ode_integrate(const FOdeSpec& spec, const FOdeOptions& opt = {});

/// Blow-up times of the floored equation across eps and their power-law fit; the theoretical
/// exponent is 2p(q-1)/(4 - Lambda).
ScalingFit f_ode_scaling_study(int N, double m, double p, double q, std::span<const double> eps,
                               double A = 1.0, const FOdeOptions& opt = {});

/// eps -> closed-form H blow-up time with H0 = H0_scale * eps, fitted per the law kind.
ScalingFit h_ode_scaling_study(int N, double m, double p, std::span<const double> eps,
                               double C = 1.0, double T3 = 1.0, double H0_scale = 1.0);

}  // namespace tricomi::oracle
