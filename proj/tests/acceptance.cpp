// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "support.hpp"
#include "tricomi/exponents.hpp"
#include "tricomi/functionals.hpp"
#include "tricomi/oracle.hpp"
#include "tricomi/solver.hpp"
#include "tricomi/specfun.hpp"
#include "tricomi/testfun.hpp"

using namespace tricomi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return v;
}

// Distance of the numerical support beyond xi(t) + R + 5 dr, accumulated over snapshots.
struct SupportMonitor {
  std::string label;
  double m = 0.0;
  double R = 1.0;
  double dr = 0.0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  double worst_leak = 0.0;  // max |u| past the allowed radius over max |u|
  long snapshots = 0;

  void operator()(const solver::SolutionState& s) {
    ++snapshots;
    const double allowed = specfun::xi(m, s.t) + R + 5.0 * dr;
    worst_excess = std::max(worst_excess, solver::support_radius(s, dr) - allowed);
    double peak = 0.0, leak = 0.0;
    for (std::size_t i = 0; i < s.u.size(); ++i) {
      peak = std::max(peak, std::abs(s.u[i]));
      if (static_cast<double>(i) * dr > allowed) leak = std::max(leak, std::abs(s.u[i]));
    }
    if (peak > 0.0) worst_leak = std::max(worst_leak, leak / peak);
  }
};

std::vector<SupportMonitor> support_runs;

Outcome bessel_fidelity() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double z : logspace(0.1, 20.0, 50)) {
    const double exact = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z);
    worst = std::max(worst, std::abs(specfun::bessel_k(0.5, z) / exact - 1.0));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-8 && secs < 1.0, format("max rel err %.3g, %.3g s", worst, secs)};
}

Outcome rho_closed_form() {
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = 0.01 * i;
    worst = std::max(worst, std::abs(specfun::rho(0.0, t) - std::exp(-t)));
  }
  bool at_zero = true;
  for (double m : {0.0, 0.5, 1.0, 2.0}) at_zero = at_zero && specfun::rho(m, 0.0) == 1.0;
  return {worst <= 1e-8 && at_zero, format("max |rho - e^-t| %.3g, rho(m,0) = 1: %s", worst,
                                            at_zero ? "yes" : "no")};
}

Outcome rho_ode_residual() {
  double worst = 0.0;
  for (double m : {0.0, 0.5, 1.0, 2.0}) {
    for (int i = 0; i <= 190; ++i) {
      const double t = 0.5 + 0.05 * i;
      const double h = 0.005 * std::min(1.0, std::pow(t, -m));
      auto r = [&](double s) { return specfun::rho(m, s); };
      const double d2 =
          (-r(t + 2 * h) + 16 * r(t + h) - 30 * r(t) + 16 * r(t - h) - r(t - 2 * h)) / (12 * h * h);
      worst = std::max(worst, std::abs(d2 - std::pow(t, 2 * m) * r(t)) / r(t));
    }
  }
  return {worst <= 1e-5, format("max relative residual %.3g on t in [0.5, 10]", worst)};
}

Outcome bessel_recurrence() {
  double worst = 0.0;
  for (double nu : {0.1, 0.25, 1.0 / 3.0, 0.5, 0.75, 1.5}) {
    for (double z : logspace(0.1, 30.0, 60)) {
      const double h = 1e-4 * z;
      const double fd = (-specfun::bessel_k(nu, z + 2 * h) + 8 * specfun::bessel_k(nu, z + h) -
                         8 * specfun::bessel_k(nu, z - h) + specfun::bessel_k(nu, z - 2 * h)) /
                        (12 * h);
      worst = std::max(worst, std::abs(specfun::bessel_k_prime(nu, z) / fd - 1.0));
    }
  }
  return {worst <= 1e-6, format("max relative difference %.3g", worst)};
}

Outcome asymptotic_ratio() {
  double worst = 0.0;
  for (double m : {0.0, 1.0, 2.0}) {
    const double t = std::pow(50.0 * (m + 1.0), 1.0 / (m + 1.0));
    worst = std::max(worst, std::abs(specfun::log_ratio(m, t) + 1.0));
  }
  return {worst <= 0.02, format("max |log_ratio + 1| at xi = 50: %.3g", worst)};
}

Outcome exponent_identities() {
  double worst = 0.0;
  for (int N = 2; N <= 8; ++N) {
    const double qs = ((N + 1) + std::sqrt(N * N + 10.0 * N - 7.0)) / (2.0 * (N - 1));
    const double pg = (N + 1.0) / (N - 1.0);
    worst = std::max({worst, std::abs(exponents::tricomi_q_crit(N, 0.0) - exponents::strauss_exponent(N)),
                      std::abs(exponents::tricomi_q_crit(N, 0.0) - qs),
                      std::abs(exponents::tricomi_p_crit(N, 0.0) - exponents::glassey_exponent(N)),
                      std::abs(exponents::tricomi_p_crit(N, 0.0) - pg)});
  }
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pq(1.0001, 6.0);
  std::uniform_int_distribution<int> dim(1, 10);
  double worst_lambda = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double p = pq(rng), q = pq(rng);
    const int N = dim(rng);
    const double ref = (q - 1.0) * ((N - 1) * p - 2.0);
    worst_lambda = std::max(worst_lambda, std::abs(exponents::lambda_mixed(p, q, N, 0.0) - ref) /
                                              std::max(1.0, std::abs(ref)));
  }
  return {worst <= 1e-10 && worst_lambda <= 1e-10,
          format("critical exponents %.3g, Lambda on 1000 triples %.3g", worst, worst_lambda)};
}

Outcome riccati_exponent() {
  double worst = 0.0;
  int points = 0;
  for (int N : {2, 3, 4})
    for (double m : {0.0, 0.5, 1.0})
      for (double frac : {0.25, 0.5, 0.75}) {
        const double p = 1.0 + frac * (exponents::tricomi_p_crit(N, m) - 1.0);
        const double displayed = 2.0 * (p - 1.0) / (2.0 - ((m + 1.0) * (N - 1) - m) * (p - 1.0));
        const auto law = oracle::h_ode_scaling_exponent(N, m, p);
        const bool power = law.kind == exponents::LawKind::power;
        worst = std::max(worst, power ? std::abs(law.exponent - displayed) : INFINITY);
        ++points;
      }
  const double pc = exponents::tricomi_p_crit(3, 0.0);
  const auto crit = oracle::h_ode_scaling_exponent(3, 0.0, pc);
  const bool exp_ok = crit.kind == exponents::LawKind::exponential && std::abs(crit.exponent - (pc - 1.0)) <= 1e-12;
  return {worst <= 1e-10 && exp_ok,
          format("%d points, max diff %.3g; critical law %s with exponent %.6g", points, worst,
                 std::string(exponents::to_string(crit.kind)).c_str(), crit.exponent)};
}

Outcome riccati_numeric() {
  double worst = 0.0;
  for (double p : {1.5, 2.0, 3.0})
    for (double beta : {0.0, 0.5, 1.0})
      for (double H0 : {1.5, 3.0, 6.0}) {
        oracle::HOdeSpec s;
        s.p = p;
        s.beta = beta;
        s.H0 = H0;
        worst = std::max(worst, std::abs(oracle::h_ode_blowup_time_numeric(s) / oracle::h_ode_blowup_time(s) - 1.0));
      }
  oracle::HOdeSpec e10;
  e10.p = 2;
  e10.beta = 1;
  e10.H0 = 0.1;
  const double rel = std::abs(oracle::h_ode_blowup_time(e10) / std::exp(10.0) - 1.0);
  return {worst <= 1e-6 && rel <= 1e-6,
          format("27-point grid max rel diff %.3g; e^10 case rel err %.3g", worst, rel)};
}

Outcome f_ode_scaling() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto eps = logspace(1e-4, 1e-1, 7);
  bool ok = true;
  std::string detail;
  for (auto [p, q] : {std::pair{2.1, 2.5}, std::pair{2.0, 2.0}}) {
    const auto fit = oracle::f_ode_scaling_study(3, 0.0, p, q, eps);
    const double rel = std::abs(-fit.slope / fit.theoretical - 1.0);
    ok = ok && rel <= 0.1 && !fit.partial;
    detail += format("(p,q)=(%g,%g) slope %.5g vs -%.5g, curvature %.3g; ", p, q, fit.slope,
                     fit.theoretical, fit.curvature);
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 60.0, detail + format("%.3g s", secs)};
}

Outcome solver_convergence() {
  bool ok = true;
  std::string detail;
  for (double m : {0.0, 1.0}) {
    const double e1 = testing::manufactured_error(3, m, 0.02);
    const double e2 = testing::manufactured_error(3, m, 0.01);
    const double e3 = testing::manufactured_error(3, m, 0.005);
    ok = ok && e1 / e2 >= 3.5 && e2 / e3 >= 3.5;
    detail += format("%sm=%g ratios %.3f %.3f", detail.empty() ? "" : "; ", m, e1 / e2, e2 / e3);
  }
  return {ok, detail};
}

Outcome weak_identity() {
  double res[2];
  double dr = 1e-2;
  for (double& r : res) {
    auto c = solver::default_config({1.0, 3, 2.0, 2.0, NonlinearityMode::linear}, 0.5, dr, 4.0);
    c.snapshot_every = 0.05;
    functionals::TraceBuilder tb(c);
    SupportMonitor mon{format("weak dr=%g", dr), 1.0, 1.0, dr};
    solver::run(c, [&](const solver::SolutionState& s) {
      tb(s);
      mon(s);
    });
    support_runs.push_back(mon);
    const double cm = testfun::c_m_constant(c.f, c.g, 3, 1.0);
    r = 0.0;
    for (double x : functionals::weak_identity_residual(tb.trace(), cm, 0.5))
      r = std::max(r, std::abs(x) / (0.5 * cm));
    dr /= 2;
  }
  const double ratio = res[0] / res[1];
  return {res[0] <= 1e-2 && ratio >= 3.0 && ratio <= 5.0,
          format("relative residual %.3g at dr=1e-2, %.3g at dr=5e-3, ratio %.3f", res[0], res[1], ratio)};
}

Outcome lemma_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const double eps = 0.5, dr = 2e-3;
  auto c = solver::default_config({1.0, 3, 2.0, 2.0, NonlinearityMode::mixed}, eps, dr, 6.0);
  c.snapshot_every = dr;
  functionals::TraceBuilder tb(c);
  SupportMonitor mon{"lemmas", 1.0, 1.0, dr};
  const auto rep = solver::run(c, [&](const solver::SolutionState& s) {
    tb(s);
    mon(s);
  });
  support_runs.push_back(mon);
  const auto& tr = tb.trace();
  const auto [from, to] = functionals::late_window(tr, 1.0, rep);
  const auto g1 = functionals::check_G1_lower_bound(tr, 1.0, eps, from, to);
  const auto g2 = functionals::check_G2_properties(tr, eps, from, to);
  const auto fd = functionals::check_F_dynamics(tr, c.params, from, to);
  const double secs = seconds_since(t0);
  const bool ok = g1.passed && g2.passed && fd.identity_residual <= 0.02 && secs < 120.0;
  return {ok, format("window [%.4g, %.4g] (%s); inf t^m G1/eps %.3g; inf G2/eps %.3g; "
                     "F'' residual %.3g; %.3g s",
                     from, to, std::string(solver::to_string(rep.outcome)).c_str(),
                     g1.fitted_constant, g2.fitted_constant, fd.identity_residual, secs)};
}

Outcome lifespan_trend() {
  const std::vector<double> eps{0.25, 0.5, 1.0};
  const double dr = 5e-2;
  std::vector<solver::BlowupReport> reps(eps.size());
  std::vector<SupportMonitor> mons;
  for (double e : eps) mons.push_back({format("trend eps=%g", e), 0.0, 1.0, dr});
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    pool.emplace_back([&, i] {
      auto c = solver::default_config({0.0, 3, 2.0, 2.0, NonlinearityMode::mixed}, eps[i], dr, 1000.0);
      c.snapshot_every = 1.0;
      reps[i] = solver::run(c, [&](const solver::SolutionState& s) { mons[i](s); });
    });
  }
  for (auto& t : pool) t.join();
  support_runs.insert(support_runs.end(), mons.begin(), mons.end());
  bool ok = true;
  std::string detail = "midpoints";
  for (std::size_t i = 0; i < eps.size(); ++i) {
    ok = ok && reps[i].outcome == solver::Outcome::blew_up;
    if (i > 0) ok = ok && reps[i].midpoint() < reps[i - 1].midpoint();
    detail += format(" eps=%g: %.4g", eps[i], reps[i].midpoint());
  }
  return {ok, detail + " (qualitative trend)"};
}

Outcome finite_speed() {
  double excess = -std::numeric_limits<double>::infinity(), leak = 0.0;
  double excess_cells = 0.0;
  long snaps = 0;
  for (const auto& m : support_runs) {
    excess = std::max(excess, m.worst_excess);
    excess_cells = std::max(excess_cells, m.worst_excess / m.dr);
    leak = std::max(leak, m.worst_leak);
    snaps += m.snapshots;
  }
  std::string per_run;
  for (const auto& m : support_runs)
    per_run += format(" [%s: %.1f cells, leak %.2g]", m.label.c_str(), m.worst_excess / m.dr, m.worst_leak);
  return {excess <= 0.0 && !support_runs.empty(),
          format("%zu runs, %ld snapshots; worst support excess %.4g (%.1f cells); "
                 "max |u| past xi+R+5dr relative to max |u|: %.3g;",
                 support_runs.size(), snaps, excess, excess_cells, leak) + per_run};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Finite speed is checked last on the snapshots of the solver runs before it.
  const std::vector<Criterion> criteria{
      {1, "Bessel fidelity", bessel_fidelity},
      {2, "rho closed form", rho_closed_form},
      {3, "rho ODE residual", rho_ode_residual},
      {4, "Bessel derivative recurrence", bessel_recurrence},
      {5, "asymptotic log ratio", asymptotic_ratio},
      {6, "exponent identities", exponent_identities},
      {7, "H-equation exponent law", riccati_exponent},
      {8, "H-equation closed form vs numerics", riccati_numeric},
      {9, "F-equation lifespan scaling", f_ode_scaling},
      {10, "solver convergence", solver_convergence},
      {11, "weak identity conservation", weak_identity},
      {12, "functional lower bounds", lemma_suite},
      {14, "PDE lifespan trend", lifespan_trend},
      {13, "finite-speed support", finite_speed},
  };
  std::vector<std::pair<int, std::string>> lines;
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    lines.emplace_back(c.id, format("%s %2d %s: ", o.pass ? "PASS" : "FAIL", c.id, c.name) + o.detail);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
