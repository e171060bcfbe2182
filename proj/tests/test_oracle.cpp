#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "tricomi/error.hpp"
#include "tricomi/exponents.hpp"
#include "tricomi/oracle.hpp"

using namespace tricomi;
using namespace tricomi::oracle;

namespace {

HOdeSpec h_spec(double p, double beta, double H0, double C = 1.0, double T3 = 1.0) {
  HOdeSpec s;
  s.p = p;
  s.beta = beta;
  s.H0 = H0;
  s.C = C;
  s.T3 = T3;
  return s;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return v;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("closed-form H blow-up times") {
    // beta = 0: T = T3 + H0^{1-p} / (C (p-1))
    CHECK(h_ode_blowup_time(h_spec(2, 0, 2)) == doctest::Approx(1.5));
    // beta = 1: T = T3 exp(budget)
    CHECK(h_ode_blowup_time(h_spec(2, 1, 0.1)) == doctest::Approx(std::exp(10.0)));
    // beta = 2 with budget beyond the tail: no blow-up
    CHECK(std::isinf(h_ode_blowup_time(h_spec(2, 2, 0.5))));
    CHECK(h_ode_blowup_time(h_spec(2, 2, 4)) == doctest::Approx(1.0 / 0.75));
  }

  TEST_CASE("numeric H times agree with the closed form on a grid") {
    for (double p : {1.5, 2.0, 3.0})
      for (double beta : {0.0, 0.5, 1.0})
        for (double H0 : {1.5, 3.0, 6.0}) {
          const auto s = h_spec(p, beta, H0);
          const double exact = h_ode_blowup_time(s);
          CHECK(std::abs(h_ode_blowup_time_numeric(s) / exact - 1.0) <= 1e-6);
        }
    CHECK(std::isinf(h_ode_blowup_time_numeric(h_spec(2, 2, 0.5))));
  }

  TEST_CASE("H spec validation and model mapping") {
    CHECK_THROWS_AS(h_spec(1.0, 0, 1).validate(), ValidationError);
    CHECK_THROWS_AS(h_spec(2, 0, -1).validate(), ValidationError);
    CHECK_THROWS_AS(h_spec(2, 0.5, 1, 1, 0).validate(), ValidationError);
    const auto s = HOdeSpec::from_model(3, 1, 2, 1, 1, 1);
    CHECK(s.beta == doctest::Approx(1.5));
  }

  TEST_CASE("H scaling exponent matches the slope of the closed form") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> up(1.05, 4.0);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 50; ++trial) {
      const int N = 2 + trial % 3;
      const double m = trial % 2;
      const double p = up(gen);
      const auto spec = HOdeSpec::from_model(N, m, p, 1, 1, 1);
      if (spec.beta > 0.9) {
        if (spec.beta > 1.0 + 1e-9) CHECK_THROWS_AS(h_ode_scaling_exponent(N, m, p), DomainError);
        continue;
      }
      ++tested;
      const auto law = h_ode_scaling_exponent(N, m, p);
      CHECK(law.kind == exponents::LawKind::power);
      // T3 -> 0 removes the offset, leaving T = ((1 - beta) budget)^{1/(1 - beta)} exactly
      const double e1 = 1e-2, e2 = 1e-3, T3 = 1e-200;
      const double T1 = h_ode_blowup_time(HOdeSpec::from_model(N, m, p, 1, e1, T3));
      const double T2 = h_ode_blowup_time(HOdeSpec::from_model(N, m, p, 1, e2, T3));
      const double slope = std::log(T2 / T1) / std::log(e2 / e1);
      CHECK(-slope == doctest::Approx(law.exponent).epsilon(1e-6));
      const double displayed = 2 * (p - 1) / (2 - ((m + 1) * (N - 1) - m) * (p - 1));
      CHECK(std::abs(law.exponent - displayed) <= 1e-10);
    }
    CHECK(tested > 10);
    // beta = 1 at N = 2, m = 0, p = 3
    const auto crit = h_ode_scaling_exponent(2, 0, 3);
    CHECK(crit.kind == exponents::LawKind::exponential);
    CHECK(crit.exponent == doctest::Approx(2.0));
  }

  TEST_CASE("F equation matches the energy integral of F'' = F^2") {
    FOdeSpec s;
    s.A = 1;
    s.q = 2;
    s.k = 0;
    s.F0 = 1;
    s.F0p = 0;
    const auto rep = f_ode_integrate(s);
    REQUIRE(rep.outcome == solver::Outcome::blew_up);
    // T* = sqrt(3/2) B(1/6, 1/2) / 3; F reaches 1e12 about sqrt(6e-12) before T*.
    const double Tstar = std::sqrt(1.5) / 3.0 * std::tgamma(1.0 / 6) * std::tgamma(0.5) / std::tgamma(2.0 / 3);
    CHECK(Tstar == doctest::Approx(2.974477425402175).epsilon(1e-13));
    CHECK(rep.t_upper <= Tstar);
    CHECK(rep.t_upper >= Tstar - 1e-5);
    CHECK(rep.t_lower <= rep.t_upper);
  }

  TEST_CASE("F blow-up time is monotone in the data") {
    auto base = FOdeSpec::from_model(3, 0, 2, 2, 0.1);
    const double T0 = f_ode_integrate(base).midpoint();
    auto s = base;
    s.A = 2;
    CHECK(f_ode_integrate(s).midpoint() < T0);
    s = base;
    s.F0 *= 2;
    CHECK(f_ode_integrate(s).midpoint() < T0);
    s = base;
    s.F0p *= 2;
    CHECK(f_ode_integrate(s).midpoint() < T0);
    s = base;
    s.floor_B *= 10;
    CHECK(f_ode_integrate(s).midpoint() <= T0);
    s = base;
    s.k = 5;
    s.floor_B = 0;
    s.F0 = 1e-3;
    s.F0p = 0;
    const auto never = f_ode_integrate(s, FOdeOptions{1e6, 1e12, 1e-10});
    CHECK(never.outcome == solver::Outcome::reached_t_max);
  }

  TEST_CASE("F scaling slopes follow the mixed law") {
    const auto eps = logspace(1e-4, 1e-1, 7);
    for (auto [p, q] : {std::pair{2.1, 2.5}, std::pair{2.0, 2.0}}) {
      const auto fit = f_ode_scaling_study(3, 0, p, q, eps);
      const double lam = exponents::lambda_mixed(p, q, 3, 0);
      CHECK(fit.theoretical == doctest::Approx(2 * p * (q - 1) / (4 - lam)));
      CHECK(std::abs(-fit.slope / fit.theoretical - 1.0) <= 0.01);
      const auto fitA = f_ode_scaling_study(3, 0, p, q, eps, 10.0);
      CHECK(fitA.slope == doctest::Approx(fit.slope).epsilon(0.03));
      CHECK(fitA.intercept < fit.intercept);
    }
    CHECK_THROWS_AS(f_ode_scaling_study(3, 0, 3, 3, eps), DomainError);
  }

  TEST_CASE("F scaling slope is stable under a half-decade shift of eps") {
    const auto fit = f_ode_scaling_study(3, 0, 2, 2, logspace(1e-4, 1e-1, 7));
    const auto shifted = f_ode_scaling_study(3, 0, 2, 2, logspace(std::sqrt(10.0) * 1e-5, std::sqrt(10.0) * 1e-2, 7));
    CHECK(shifted.slope == doctest::Approx(fit.slope).epsilon(0.03));
  }

  TEST_CASE("H scaling study recovers the power law") {
    const auto eps = logspace(1e-8, 1e-6, 5);
    const auto fit = h_ode_scaling_study(3, 0, 1.5, eps);
    CHECK(-fit.slope == doctest::Approx(fit.theoretical).epsilon(1e-2));
  }
}
