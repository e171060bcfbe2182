#include "tricomi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tricomi/error.hpp"
#include "tricomi/ode.hpp"

namespace tricomi::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_critical(double beta) { return std::abs(beta - 1.0) <= 1e-12; }

}  // namespace

HOdeSpec HOdeSpec::from_model(int N, double m, double p, double C, double H0, double T3) {
  HOdeSpec s;
  s.C = C;
  s.p = p;
  s.beta = ((N - 1) * (m + 1.0) - m) * (p - 1.0) / 2.0;
  s.H0 = H0;
  s.T3 = T3;
  s.validate();
  return s;
}

void HOdeSpec::validate() const {
  if (!(C > 0.0)) throw ValidationError("HOdeSpec: C must be > 0");
  if (!(p > 1.0)) throw ValidationError("HOdeSpec: p must be > 1");
  if (!(H0 > 0.0)) throw ValidationError("HOdeSpec: H0 must be > 0");
  if (!(T3 >= 0.0)) throw ValidationError("HOdeSpec: T3 must be >= 0");
  if (beta > 0.0 && T3 == 0.0) throw ValidationError("HOdeSpec: T3 must be > 0 when beta > 0");
}

double h_ode_blowup_time(const HOdeSpec& s) {
  s.validate();
  const double budget = std::pow(s.H0, 1.0 - s.p) / (s.C * (s.p - 1.0));
  if (is_critical(s.beta)) return s.T3 * std::exp(budget);
  if (s.beta < 1.0) {
    const double g = 1.0 - s.beta;
    return std::pow(std::pow(s.T3, g) + g * budget, 1.0 / g);
  }
  // int_{T3}^inf s^{-beta} ds = T3^{1-beta} / (beta - 1)
  const double g = s.beta - 1.0;
  const double tail = std::pow(s.T3, -g) / g;
  if (budget >= tail) return kInf;
  return std::pow(std::pow(s.T3, -g) - g * budget, -1.0 / g);
}

double h_ode_blowup_time_numeric(const HOdeSpec& s, double rel_tol) {
  s.validate();
  const double budget = std::pow(s.H0, 1.0 - s.p) / (s.C * (s.p - 1.0));
  const double beta = s.beta;
  ode::Rhs rhs = [beta](double, const ode::State& y, ode::State& dy) {
    dy[0] = y[0] > 0.0 ? std::pow(y[0], beta) : (beta == 0.0 ? 1.0 : 0.0);
  };
  ode::Dopri5Options opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = 1e-300;
  // steps below the resolution of tau only occur on the way to a singularity
  opt.h_min = 1e-14 * budget;
  constexpr double kRunaway = 1e300;
  bool runaway = false;
  const auto res = ode::dopri5(rhs, 0.0, {s.T3}, budget, opt, [&](double, const ode::State& y) {
    if (!(y[0] < kRunaway)) {
      runaway = true;
      return ode::Control::stop;
    }
    return ode::Control::proceed;
  });
  if (runaway || res.status == ode::Dopri5Status::non_finite ||
      res.status == ode::Dopri5Status::step_floor)
    return kInf;
  if (res.status != ode::Dopri5Status::reached_end)
    throw NumericalError("h_ode_blowup_time_numeric: integration did not reach the end");
  return res.y[0];
}

exponents::LifespanLaw h_ode_scaling_exponent(int N, double m, double p) {
  if (N < 1 || !(m >= 0.0) || !(p > 1.0))
    throw ValidationError("h_ode_scaling_exponent: need N >= 1, m >= 0, p > 1");
  const double beta = ((N - 1) * (m + 1.0) - m) * (p - 1.0) / 2.0;
  if (is_critical(beta)) return {exponents::LawKind::exponential, p - 1.0};
  if (beta > 1.0) throw DomainError("h_ode_scaling_exponent: p is above the critical exponent");
  return {exponents::LawKind::power, (p - 1.0) / (1.0 - beta)};
}

FOdeSpec FOdeSpec::from_model(int N, double m, double p, double q, double eps, double A) {
  FOdeSpec s;
  s.A = A;
  s.q = q;
  s.k = N * (q - 1.0) * (m + 1.0);
  s.floor_B = std::pow(eps, p);
  s.floor_a = 2.0 - ((m + 1.0) * (N - 1) * (p - 2.0) - m * p) / 2.0;
  s.F0 = eps;
  s.F0p = eps;
  s.validate();
  return s;
}

void FOdeSpec::validate() const {
  if (!(A >= 0.0)) throw ValidationError("FOdeSpec: A must be >= 0");
  if (!(q > 1.0)) throw ValidationError("FOdeSpec: q must be > 1");
  if (!(k >= 0.0)) throw ValidationError("FOdeSpec: k must be >= 0");
  if (!(floor_B >= 0.0)) throw ValidationError("FOdeSpec: floor_B must be >= 0");
  if (!(F0 > 0.0) || !(F0p >= 0.0)) throw ValidationError("FOdeSpec: need F0 > 0, F0p >= 0");
  if (!(t_start >= 0.0)) throw ValidationError("FOdeSpec: t_start must be >= 0");
}

solver::BlowupReport f_ode_integrate(const FOdeSpec& s, const FOdeOptions& opt) {
  s.validate();
  auto floor_at = [&](double t) {
    return s.floor_B > 0.0 ? s.floor_B * std::pow(1.0 + t, s.floor_a) : 0.0;
  };
  auto envelope = [&](double t) {
    return std::max({1.0, s.F0 + s.F0p * (t - s.t_start), floor_at(t)});
  };
  ode::Rhs rhs = [&](double t, const ode::State& y, ode::State& dy) {
    const double F = std::max(y[0], floor_at(t));
    dy[0] = y[1];
    dy[1] = s.A * std::pow(std::max(F, 0.0), s.q) * std::pow(1.0 + t, -s.k);
  };
  ode::Dopri5Options o;
  o.rel_tol = opt.rel_tol;
  o.abs_tol = 1e-14 * std::min(1.0, s.F0);

  solver::BlowupReport rep;
  double last_stable = s.t_start;
  bool triggered = false;
  const auto res = ode::dopri5(rhs, s.t_start, {s.F0, s.F0p}, opt.t_max, o,
                               [&](double t, const ode::State& y) {
                                 const double ratio = y[0] / envelope(t);
                                 if (!(ratio <= opt.threshold)) {
                                   triggered = true;
                                   return ode::Control::stop;
                                 }
                                 if (ratio < 0.1 * opt.threshold) last_stable = t;
                                 return ode::Control::proceed;
                               });
  rep.steps = res.steps;
  rep.max_u = res.y.empty() ? 0.0 : res.y[0];
  rep.max_ut = res.y.size() > 1 ? res.y[1] : 0.0;
  rep.t_lower = last_stable;
  rep.t_upper = res.t;
  if (triggered) {
    rep.outcome = solver::Outcome::blew_up;
    rep.trigger = solver::Trigger::u_overflow;
  } else if (res.status == ode::Dopri5Status::step_floor ||
             res.status == ode::Dopri5Status::non_finite) {
    rep.outcome = solver::Outcome::blew_up;
    rep.trigger = solver::Trigger::dt_floor;
  } else if (res.status == ode::Dopri5Status::max_steps) {
    rep.outcome = solver::Outcome::step_floor;
    rep.trigger = solver::Trigger::none;
  } else {
    rep.outcome = solver::Outcome::reached_t_max;
    rep.trigger = solver::Trigger::none;
    rep.t_lower = rep.t_upper;
  }
  return rep;
}

ScalingFit f_ode_scaling_study(int N, double m, double p, double q, std::span<const double> eps,
                               double A, const FOdeOptions& opt) {
  const double lambda = exponents::lambda_mixed(p, q, N, m);
  if (!(lambda < 4.0))
    throw DomainError("f_ode_scaling_study: (p, q) lies outside the Lambda < 4 region");
  std::vector<double> T(eps.size()), width(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const auto rep = f_ode_integrate(FOdeSpec::from_model(N, m, p, q, eps[i], A), opt);
    if (rep.outcome == solver::Outcome::blew_up) {
      T[i] = rep.midpoint();
      width[i] = rep.t_upper - rep.t_lower;
    } else {
      T[i] = kInf;
    }
  }
  return fit_scaling(eps, T, width, exponents::LawKind::power, p,
                     2.0 * p * (q - 1.0) / (4.0 - lambda));
}

ScalingFit h_ode_scaling_study(int N, double m, double p, std::span<const double> eps, double C,
                               double T3, double H0_scale) {
  const auto law = h_ode_scaling_exponent(N, m, p);
  std::vector<double> T(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i)
    T[i] = h_ode_blowup_time(HOdeSpec::from_model(N, m, p, C, H0_scale * eps[i], T3));
  return fit_scaling(eps, T, {}, law.kind, p, law.exponent);
}

}  // namespace tricomi::oracle
