#pragma once

#include <functional>
#include <vector>

namespace tricomi::ode {

using State = std::vector<double>;
using Rhs = std::function<void(double t, const State& y, State& dydt)>;

/// Decision returned by the observer after each accepted step.
enum class Control { proceed, stop };

struct Dopri5Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  double h_init = 0.0;  // 0 picks a starting step from the derivative norm
  double h_min = 1e-300;
  double h_max = 0.0;   // 0 means unbounded
  long max_steps = 5'000'000;
};

enum class Dopri5Status { reached_end, stopped, step_floor, max_steps, non_finite };

struct Dopri5Result {
  Dopri5Status status = Dopri5Status::reached_end;
  double t = 0.0;
  State y;
  long steps = 0;
};

/// Dormand-Prince 5(4) with PI step-size control, integrating from t0 to t_end.
/// The observer sees every accepted step and may request an early stop.
Dopri5Result dopri5(const Rhs& rhs, double t0, State y0, double t_end, const Dopri5Options& opt,
                    const std::function<Control(double t, const State& y)>& observer = {});

}  // namespace tricomi::ode
