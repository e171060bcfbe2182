#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "tricomi/error.hpp"
#include "tricomi/functionals.hpp"
#include "tricomi/solver.hpp"
#include "tricomi/specfun.hpp"
#include "tricomi/testfun.hpp"

using namespace tricomi;
using namespace tricomi::functionals;

namespace {

// 4 pi int_0^1 (1 - r^2)^4 (4 pi sinh r / r) r^2 dr by fine Simpson; N = 3 closed-form phi.
double bump_phi_integral_n3() {
  const int n = 4000;
  const double h = 1.0 / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double phi = r == 0.0 ? 4.0 * std::numbers::pi : 4.0 * std::numbers::pi * std::sinh(r) / r;
    s += w * std::pow(1.0 - r * r, 4) * phi * r * r;
  }
  return 4.0 * std::numbers::pi * s * h / 3.0;
}

FunctionalTrace run_trace(solver::SolverConfig c) {
  TraceBuilder tb(c);
  solver::run(c, [&](const solver::SolutionState& s) { tb(s); });
  return tb.take();
}

}  // namespace

TEST_SUITE("functionals") {
  TEST_CASE("zero state gives zero functionals") {
    const ModelParams mp{0, 3, 2, 2, NonlinearityMode::mixed};
    TraceBuilder tb(mp, 0.01, 200);
    solver::SolutionState s;
    s.u.assign(200, 0.0);
    s.v.assign(200, 0.0);
    tb(s);
    const auto& tr = tb.trace();
    REQUIRE(tr.size() == 1);
    for (const auto* col : {&tr.G1, &tr.G2, &tr.F, &tr.Fp, &tr.Nterm, &tr.W, &tr.Fpp_raw})
      CHECK((*col)[0] == 0.0);
  }

  TEST_CASE("initial values match quadrature of the data") {
    for (double m : {0.0, 1.0}) {
      const double eps = 0.5;
      auto c = solver::default_config({m, 3, 2, 2, NonlinearityMode::mixed}, eps, 1e-3, 1e-3);
      TraceBuilder tb(c);
      tb(solver::initial_state(c));
      const auto& tr = tb.trace();
      const double I = bump_phi_integral_n3();
      CHECK(tr.G1[0] == doctest::Approx(eps * I).epsilon(1e-5));
      CHECK(tr.G2[0] == doctest::Approx(eps * I).epsilon(1e-5));
      const double cm = testfun::c_m_constant(c.f, c.g, 3, m);
      CHECK(tr.W[0] == doctest::Approx(eps * cm).epsilon(1e-5));
      CHECK(weak_identity_residual(tr, cm, eps)[0] == doctest::Approx(0.0).scale(eps * cm * 1e-5));
    }
  }

  TEST_CASE("trace builder rejects mismatched grids and repeated times") {
    const ModelParams mp{0, 3, 2, 2, NonlinearityMode::mixed};
    TraceBuilder tb(mp, 0.01, 100);
    solver::SolutionState s;
    s.u.assign(99, 0.0);
    s.v.assign(99, 0.0);
    CHECK_THROWS_AS(tb(s), ValidationError);
    s.u.assign(100, 0.0);
    s.v.assign(100, 0.0);
    tb(s);
    CHECK_THROWS_AS(tb(s), ValidationError);
  }

  TEST_CASE("linear runs conserve W and scale linearly in eps") {
    auto c = solver::default_config({1, 3, 2, 2, NonlinearityMode::linear}, 0.5, 1e-2, 3.0);
    c.snapshot_every = 0.05;
    const auto tr = run_trace(c);
    const double cm = testfun::c_m_constant(c.f, c.g, 3, 1);
    double worst = 0.0;
    for (double r : weak_identity_residual(tr, cm, 0.5)) worst = std::max(worst, std::abs(r));
    CHECK(worst / (0.5 * cm) <= 1e-3);

    c.epsilon = 1.0;
    const auto tr2 = run_trace(c);
    REQUIRE(tr2.size() == tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) {
      CHECK(tr2.G2[i] == doctest::Approx(2.0 * tr.G2[i]).epsilon(1e-12));
      CHECK(tr2.G1[i] == doctest::Approx(2.0 * tr.G1[i]).epsilon(1e-12));
    }

    const auto eq6 = check_eq6_identity(tr, cm, 0.5, 1.0);
    CHECK(eq6.max_rel_first <= 1e-2);
    CHECK(eq6.max_rel_second <= 1e-2);
    CHECK_THROWS_AS(check_F_dynamics(tr, c.params, 0.0, 3.0), ValidationError);
  }

  TEST_CASE("mixed run satisfies the F identity and the lower bounds") {
    auto c = solver::default_config({0, 3, 2, 2, NonlinearityMode::mixed}, 0.5, 1e-2, 10.0);
    c.snapshot_every = 0.02;
    const auto tr = run_trace(c);
    const auto fd = check_F_dynamics(tr, c.params, 1.0, 10.0);
    CHECK(fd.identity_residual <= 1e-3);
    CHECK(fd.lower_bound.fitted_constant > 0.0);
    const auto g1 = check_G1_lower_bound(tr, 0.0, 0.5, 2.0, 10.0);
    CHECK(g1.passed);
    CHECK(g1.fitted_constant > 0.0);
    const auto g2 = check_G2_properties(tr, 0.5, 2.0, 10.0);
    CHECK(g2.passed);
    const auto fl = check_F_lower_bound(tr, c.params, 0.5, 1.0, 10.0);
    CHECK(fl.fitted_constant > 0.0);
  }

  TEST_CASE("windows") {
    FunctionalTrace tr;
    for (int i = 0; i < 10; ++i) {
      tr.times.push_back(i);
      for (auto* col : {&tr.G1, &tr.G2, &tr.F, &tr.Fp, &tr.Nterm, &tr.W, &tr.Fpp_raw}) col->push_back(0.0);
    }
    tr.validate();
    const auto w = window(tr, 2.5, 7.0);
    CHECK(w.first == 3);
    CHECK(w.last == 7);
    CHECK_THROWS_AS(window(tr, 20.0, 30.0), ValidationError);
    tr.times[4] = 3.0;
    CHECK_THROWS_AS(tr.validate(), ValidationError);
  }
}
