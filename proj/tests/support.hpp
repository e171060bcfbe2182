#pragma once

// Shared reference computations for the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <utility>

#include "tricomi/solver.hpp"
#include "tricomi/specfun.hpp"
#include "tricomi/testfun.hpp"

namespace tricomi::testing {

/// Max-in-time error of the linear solver against u = rho(t) phi(r) on [0, L],
/// started at t0 from the exact state and driven by the exact Dirichlet value at r = L.
inline double manufactured_error(int N, double m, double dr, double t0 = 0.5, double t1 = 2.0,
                                 double L = 2.0) {
  const auto n = static_cast<std::size_t>(std::llround(L / dr)) + 1;
  const testfun::TestField tf(N, m);
  auto exact = [&](double r, double t) { return specfun::rho(m, t) * tf.phi(r); };
  auto exact_t = [&](double r, double t) {
    return (t == 0.0 ? specfun::rho_prime_at_zero(m) : specfun::rho_prime(m, t)) * tf.phi(r);
  };
  const double r_out = static_cast<double>(n - 1) * dr;
  solver::RadialSystem sys(ModelParams{m, N, 2.0, 2.0, NonlinearityMode::linear}, dr, n,
                           [&](double t) { return std::pair{exact(r_out, t), exact_t(r_out, t)}; });
  solver::SolutionState s;
  s.t = t0;
  s.u.resize(n);
  s.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.u[i] = exact(static_cast<double>(i) * dr, t0);
    s.v[i] = exact_t(static_cast<double>(i) * dr, t0);
  }
  double err = 0.0;
  while (s.t < t1 - 1e-12) {
    const double speed = std::pow(std::max(s.t, dr), m);
    const double dt = std::min({0.5 * dr / speed, 0.05, t1 - s.t});
    sys.step(s, dt);
    for (std::size_t i = 0; i < n; ++i)
      err = std::max(err, std::abs(s.u[i] - exact(static_cast<double>(i) * dr, s.t)));
  }
  return err;
}

}  // namespace tricomi::testing
