#include "config.hpp"

#include "tricomi/error.hpp"
#include "tricomi/testfun.hpp"

namespace tricomi::cli {

const std::set<std::string>& solver_keys() {
  static const std::set<std::string> keys = {
      "m",      "N",          "p",          "q",      "mode",          "epsilon",
      "dr",     "cfl",        "t_max",      "u_max",  "dt_min",        "dt_max",
      "domain_buffer",        "snapshot_every",     "R",             "k",
      "f_amplitude",          "g_amplitude",        "nonlinear_step_control"};
  return keys;
}

const std::set<std::string>& plan_keys() {
  static const std::set<std::string> keys = [] {
    auto k = solver_keys();
    k.insert({"target", "eps_values", "A", "C", "T3", "H0_scale", "threads", "svg",
              "region_resolution", "region_p_min", "region_p_max", "region_q_min",
              "region_q_max"});
    return k;
  }();
  return keys;
}

solver::SolverConfig solver_config(const KvConfig& kv) {
  solver::SolverConfig c;
  ModelParams& mp = c.params;
  mp.m = kv.number("m", mp.m);
  mp.N = kv.integer("N", mp.N);
  mp.p = kv.number("p", mp.p);
  mp.q = kv.number("q", mp.q);
  if (auto mode = kv.text("mode")) mp.mode = parse_mode(*mode);
  mp.validate();

  c.epsilon = kv.number("epsilon", c.epsilon);
  c.dr = kv.number("dr", c.dr);
  c.cfl = kv.number("cfl", c.cfl);
  c.t_max = kv.number("t_max", c.t_max);
  c.u_max = kv.number("u_max", c.u_max);
  c.dt_min = kv.number("dt_min", c.dt_min);
  c.dt_max = kv.number("dt_max", c.dt_max);
  c.domain_buffer = kv.number("domain_buffer", c.domain_buffer);
  c.snapshot_every = kv.number("snapshot_every", c.snapshot_every);
  c.nonlinear_step_control = kv.flag("nonlinear_step_control", c.nonlinear_step_control);
  if (!(c.dr > 0.0)) throw ValidationError("dr must be > 0");

  const double R = kv.number("R", 1.0);
  const int k = kv.integer("k", 4);
  if (!(R > 0.0) || k < 1) throw ValidationError("data need R > 0 and k >= 1");
  const double fa = kv.number("f_amplitude", 1.0);
  const double ga = kv.number("g_amplitude", 1.0);
  if (!(fa >= 0.0) || !(ga >= 0.0)) throw ValidationError("data amplitudes must be >= 0");
  c.f = fa > 0.0 ? testfun::bump_profile(R, k, c.dr, fa) : testfun::zero_profile(R, k, c.dr);
  c.g = ga > 0.0 ? testfun::bump_profile(R, k, c.dr, ga) : testfun::zero_profile(R, k, c.dr);
  if (fa == 0.0 && ga == 0.0) throw ValidationError("f and g vanish identically");
  c.validate();
  return c;
}

harness::SweepPlan sweep_plan(const KvConfig& kv) {
  harness::SweepPlan plan;
  plan.base = solver_config(kv);
  if (!kv.has("t_max")) plan.base.t_max = 50.0;
  plan.target = harness::parse_target(kv.string("target", "pde"));
  plan.eps_values = kv.numbers("eps_values");
  if (plan.eps_values.empty()) plan.eps_values = {1.0, 0.71, 0.5, 0.35, 0.25};
  plan.A = kv.number("A", plan.A);
  plan.C = kv.number("C", plan.C);
  plan.T3 = kv.number("T3", plan.T3);
  plan.H0_scale = kv.number("H0_scale", plan.H0_scale);
  plan.threads = kv.integer("threads", 0);
  plan.svg = kv.flag("svg", false);
  plan.validate();
  return plan;
}

}  // namespace tricomi::cli
