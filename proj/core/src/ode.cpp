#include "tricomi/ode.hpp"

#include <algorithm>
#include <cmath>

namespace tricomi::ode {

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// difference between 5th and embedded 4th order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

bool all_finite(const State& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

Dopri5Result dopri5(const Rhs& rhs, double t0, State y0, double t_end, const Dopri5Options& opt,
                    const std::function<Control(double t, const State& y)>& observer) {
  const std::size_t n = y0.size();
  Dopri5Result res;
  res.t = t0;
  res.y = std::move(y0);
  State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);

  rhs(res.t, res.y, k1);
  double h = opt.h_init;
  if (h <= 0.0) {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = opt.abs_tol + opt.rel_tol * std::abs(res.y[i]);
      d0 = std::max(d0, std::abs(res.y[i]) / sc);
      d1 = std::max(d1, std::abs(k1[i]) / sc);
    }
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, t_end - t0);
  }
  if (opt.h_max > 0.0) h = std::min(h, opt.h_max);

  double err_prev = 1e-4;
  while (res.t < t_end) {
    if (res.steps >= opt.max_steps) {
      res.status = Dopri5Status::max_steps;
      return res;
    }
    if (h < opt.h_min) {
      res.status = Dopri5Status::step_floor;
      return res;
    }
    h = std::min(h, t_end - res.t);
    const double t = res.t;
    const State& y = res.y;

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, ynew, k7);

    double err = 0.0;
    bool finite = all_finite(ynew) && all_finite(k7);
    if (finite) {
      for (std::size_t i = 0; i < n; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * k7[i]);
        const double sc =
            opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        err = std::max(err, std::abs(e) / sc);
      }
    }
    if (!finite || !std::isfinite(err)) {
      h *= 0.2;
      if (h < opt.h_min) {
        res.status = Dopri5Status::non_finite;
        return res;
      }
      continue;
    }
    if (err <= 1.0) {
      res.t = (t_end - (t + h) < 1e-15 * std::abs(t_end)) ? t_end : t + h;
      res.y.swap(ynew);
      k1.swap(k7);
      ++res.steps;
      const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) *
                         std::pow(err_prev, 0.4 / 5.0);
      err_prev = std::max(err, 1e-4);
      h *= std::clamp(fac, 0.2, 10.0);
      if (opt.h_max > 0.0) h = std::min(h, opt.h_max);
      if (observer && observer(res.t, res.y) == Control::stop) {
        res.status = Dopri5Status::stopped;
        return res;
      }
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
    }
  }
  res.status = Dopri5Status::reached_end;
  return res;
}

}  // namespace tricomi::ode
