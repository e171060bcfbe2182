#include "tricomi/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tricomi/error.hpp"
#include "tricomi/specfun.hpp"

namespace tricomi::solver {

namespace {

constexpr double kNonlinearStepFactor = 0.1;

inline double abs_pow(double x, double e) {
  const double a = std::abs(x);
  return e == 2.0 ? a * a : std::pow(a, e);
}

struct Extremes {
  double max_u = 0.0;
  double max_v = 0.0;
  bool finite = true;
};

Extremes extremes(const SolutionState& s) {
  Extremes e;
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    const double au = std::abs(s.u[i]);
    const double av = std::abs(s.v[i]);
    if (!std::isfinite(au) || !std::isfinite(av)) {
      e.finite = false;
      return e;
    }
    e.max_u = std::max(e.max_u, au);
    e.max_v = std::max(e.max_v, av);
  }
  return e;
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::blew_up: return "blew_up";
    case Outcome::reached_t_max: return "reached_t_max";
    case Outcome::step_floor: return "step_floor";
  }
  return "reached_t_max";
}

std::string_view to_string(Trigger t) {
  switch (t) {
    case Trigger::u_overflow: return "u_overflow";
    case Trigger::ut_overflow: return "ut_overflow";
    case Trigger::dt_floor: return "dt_floor";
    case Trigger::none: return "none";
  }
  return "none";
}

double SolverConfig::outer_radius() const {
  const double R = std::max(f.support_radius, g.support_radius);
  return R + specfun::xi(params.m, t_max) + domain_buffer;
}

std::size_t SolverConfig::node_count() const {
  return static_cast<std::size_t>(std::ceil(outer_radius() / dr)) + 1;
}

void SolverConfig::validate() const {
  params.validate();
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
  if (!(dr > 0.0)) throw ValidationError("dr must be > 0");
  if (!(cfl > 0.0 && cfl < 1.0)) throw ValidationError("cfl must lie in (0, 1)");
  if (!(t_max > 0.0)) throw ValidationError("t_max must be > 0");
  if (!(u_max > 0.0)) throw ValidationError("u_max must be > 0");
  if (!(dt_min > 0.0) || !(dt_max >= dt_min)) throw ValidationError("need 0 < dt_min <= dt_max");
  if (!(domain_buffer >= 0.0)) throw ValidationError("domain_buffer must be >= 0");
  if (!(snapshot_every >= 0.0)) throw ValidationError("snapshot_every must be >= 0");
  f.validate_allow_zero();
  g.validate_allow_zero();
  for (const auto* prof : {&f, &g}) {
    if (std::abs(prof->h - dr) > 1e-12 * dr) {
      throw ValidationError("initial profiles must be sampled with spacing dr");
    }
  }
}

SolverConfig default_config(const ModelParams& params, double epsilon, double dr, double t_max) {
  SolverConfig c;
  c.params = params;
  c.epsilon = epsilon;
  c.dr = dr;
  c.t_max = t_max;
  c.f = testfun::bump_profile(1.0, 4, dr);
  c.g = testfun::bump_profile(1.0, 4, dr);
  return c;
}

void spatial_operator(std::span<const double> u, int N, double dr, std::span<double> out) {
  const std::size_t n = u.size();
  if (out.size() != n) throw DomainError("spatial_operator: size mismatch");
  if (n < 2) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const double inv_h2 = 1.0 / (dr * dr);
  const double k = 0.5 * (N - 1.0) / dr;
  out[0] = 2.0 * N * (u[1] - u[0]) * inv_h2;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double r = static_cast<double>(i) * dr;
    out[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2 + k / r * (u[i + 1] - u[i - 1]);
  }
  out[n - 1] = 0.0;
}

double step_size(double t, const SolverConfig& config) {
  const double m = config.params.m;
  const double speed = m == 0.0 ? 1.0 : std::pow(std::max(t, config.dr), m);
  return std::min(config.dt_max, config.cfl * config.dr / speed);
}

RadialSystem::RadialSystem(const ModelParams& params, double dr, std::size_t nodes,
                           BoundaryFn boundary)
    : params_(params),
      weights_(weights(params.mode)),
      dr_(dr),
      nodes_(nodes),
      boundary_(std::move(boundary)),
      lap_(nodes) {
  if (nodes < 3) throw ValidationError("RadialSystem: need at least 3 nodes");
  for (int s = 0; s < 4; ++s) {
    ku_[s].resize(nodes);
    kv_[s].resize(nodes);
  }
  su_.resize(nodes);
  sv_.resize(nodes);
}

void RadialSystem::rhs(double t, std::span<const double> u, std::span<const double> v,
                       std::span<double> du, std::span<double> dv) const {
  spatial_operator(u, params_.N, dr_, lap_);
  const double speed2 = params_.m == 0.0 ? 1.0 : std::pow(t, 2.0 * params_.m);
  const double a = weights_.a;
  const double b = weights_.b;
  const double p = params_.p;
  const double q = params_.q;
  const std::size_t last = nodes_ - 1;
  for (std::size_t i = 0; i < last; ++i) {
    du[i] = v[i];
    double acc = speed2 * lap_[i];
    if (a != 0.0) acc += a * abs_pow(v[i], p);
    if (b != 0.0) acc += b * abs_pow(u[i], q);
    dv[i] = acc;
  }
  du[last] = 0.0;
  dv[last] = 0.0;
}

void RadialSystem::apply_boundary(double t, std::span<double> u, std::span<double> v) const {
  if (boundary_) {
    const auto [ub, vb] = boundary_(t);
    u.back() = ub;
    v.back() = vb;
  } else {
    u.back() = 0.0;
    v.back() = 0.0;
  }
}

void RadialSystem::step(SolutionState& state, double dt) {
  const double t = state.t;
  auto& u = state.u;
  auto& v = state.v;
  const std::size_t n = nodes_;

  rhs(t, u, v, ku_[0], kv_[0]);
  const double c[3] = {0.5, 0.5, 1.0};
  for (int s = 1; s < 4; ++s) {
    const double h = c[s - 1] * dt;
    for (std::size_t i = 0; i < n; ++i) {
      su_[i] = u[i] + h * ku_[s - 1][i];
      sv_[i] = v[i] + h * kv_[s - 1][i];
    }
    apply_boundary(t + h, su_, sv_);
    rhs(t + h, su_, sv_, ku_[s], kv_[s]);
  }
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    u[i] += w * (ku_[0][i] + 2.0 * ku_[1][i] + 2.0 * ku_[2][i] + ku_[3][i]);
    v[i] += w * (kv_[0][i] + 2.0 * kv_[1][i] + 2.0 * kv_[2][i] + kv_[3][i]);
  }
  state.t = t + dt;
  apply_boundary(state.t, u, v);
}

SolutionState initial_state(const SolverConfig& config) {
  SolutionState s;
  const std::size_t n = config.node_count();
  s.u.assign(n, 0.0);
  s.v.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    s.u[i] = config.epsilon * config.f.at(i);
    s.v[i] = config.epsilon * config.g.at(i);
  }
  return s;
}

std::pair<std::vector<double>, std::vector<double>> rhs(const SolutionState& state,
                                                        const SolverConfig& config) {
  const std::size_t n = state.u.size();
  RadialSystem sys(config.params, config.dr, n);
  std::vector<double> du(n), dv(n);
  sys.rhs(state.t, state.u, state.v, du, dv);
  return {std::move(du), std::move(dv)};
}

SolutionState step(const SolutionState& state, const SolverConfig& config) {
  SolutionState next = state;
  RadialSystem sys(config.params, config.dr, state.u.size());
  const double dt = std::min(step_size(state.t, config), config.t_max - state.t);
  if (dt > 0.0) sys.step(next, dt);
  return next;
}

BlowupReport run(const SolverConfig& config, const SnapshotSink& sink) {
  config.validate();
  const NonlinearWeights w = weights(config.params.mode);
  RadialSystem sys(config.params, config.dr, config.node_count());
  SolutionState state = initial_state(config);
  BlowupReport rep;

  Extremes ext = extremes(state);
  const double stable_level = 0.1 * config.u_max;
  double last_stable = 0.0;
  rep.max_u = ext.max_u;
  rep.max_ut = ext.max_v;
  if (sink) sink(state);

  const double cadence = config.snapshot_every;
  long next_snapshot_index = 1;
  bool emitted_last = true;
  const double t_eps = 1e-12 * std::max(1.0, config.t_max);

  while (state.t < config.t_max - t_eps) {
    double dt = step_size(state.t, config);
    if (config.nonlinear_step_control) {
      const double rate = w.a * std::pow(ext.max_v, config.params.p - 1.0) +
                          w.b * std::pow(ext.max_u, 0.5 * (config.params.q - 1.0));
      if (rate > 0.0) dt = std::min(dt, kNonlinearStepFactor / rate);
    }
    if (dt < config.dt_min) {
      rep.outcome = Outcome::step_floor;
      rep.trigger = Trigger::dt_floor;
      rep.t_lower = last_stable;
      rep.t_upper = state.t;
      if (sink && !emitted_last) sink(state);
      return rep;
    }
    dt = std::min(dt, config.t_max - state.t);
    bool snapshot_due = false;
    if (cadence > 0.0) {
      const double next_t = static_cast<double>(next_snapshot_index) * cadence;
      if (state.t + dt >= next_t - t_eps) {
        dt = next_t - state.t;
        snapshot_due = true;
      }
    }
    sys.step(state, dt);
    ++rep.steps;
    ext = extremes(state);
    emitted_last = false;

    const bool overflow_u = !ext.finite || ext.max_u > config.u_max;
    const bool overflow_v = ext.finite && ext.max_v > config.u_max;
    if (overflow_u || overflow_v) {
      rep.outcome = Outcome::blew_up;
      rep.trigger = overflow_u ? Trigger::u_overflow : Trigger::ut_overflow;
      rep.t_lower = last_stable;
      rep.t_upper = state.t;
      if (ext.finite) {
        rep.max_u = ext.max_u;
        rep.max_ut = ext.max_v;
      }
      return rep;
    }
    rep.max_u = ext.max_u;
    rep.max_ut = ext.max_v;
    if (ext.max_u < stable_level) last_stable = state.t;
    if (snapshot_due) {
      ++next_snapshot_index;
      if (sink) sink(state);
      emitted_last = true;
    }
  }
  if (sink && !emitted_last) sink(state);
  rep.outcome = Outcome::reached_t_max;
  rep.trigger = Trigger::none;
  rep.t_lower = state.t;
  rep.t_upper = state.t;
  return rep;
}

RunResult run(const SolverConfig& config) {
  RunResult out;
  out.report = run(config, [&out](const SolutionState& s) { out.snapshots.push_back(s); });
  return out;
}

double support_radius(const SolutionState& state, double dr, double rel_threshold) {
  double peak = 0.0;
  for (double x : state.u) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return 0.0;
  const double level = rel_threshold * peak;
  for (std::size_t i = state.u.size(); i-- > 0;) {
    if (std::abs(state.u[i]) > level) return static_cast<double>(i) * dr;
  }
  return 0.0;
}

}  // namespace tricomi::solver
