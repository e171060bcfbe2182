#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tricomi/exponents.hpp"
#include "tricomi/testfun.hpp"

namespace tricomi::solver {

struct SolverConfig {
  ModelParams params;
  testfun::RadialProfile f;
  testfun::RadialProfile g;
  double epsilon = 0.5;
  double dr = 1e-2;
  double cfl = 0.5;
  double t_max = 10.0;
  double u_max = 1e6;       // blow-up threshold on max |u| and max |u_t|
  double dt_min = 1e-12;
  double dt_max = 0.05;
  double domain_buffer = 0.5;
  double snapshot_every = 0.0;  // cadence of emitted snapshots; 0 emits only t = 0 and the end
  /// Limit dt by the local growth rate of the nonlinear terms (dt <= 0.1 / rate).
  bool nonlinear_step_control = true;

  /// R + xi(t_max) + domain_buffer, rounded up to the grid.
  double outer_radius() const;
  std::size_t node_count() const;
  /// Throws ValidationError on invalid parameters, profiles or numerics.
  void validate() const;
};

/// Config with bump data f = g = (1 - r^2)^4 on the unit ball, sampled at dr.
SolverConfig default_config(const ModelParams& params, double epsilon, double dr = 1e-2,
                            double t_max = 10.0);

struct SolutionState {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;  // u_t
};

enum class Outcome { blew_up, reached_t_max, step_floor };
enum class Trigger { u_overflow, ut_overflow, dt_floor, none };
std::string_view to_string(Outcome o);
std::string_view to_string(Trigger t);

struct BlowupReport {
  Outcome outcome = Outcome::reached_t_max;
  double t_lower = 0.0;  // last time with max |u| < 0.1 u_max
  double t_upper = 0.0;  // time of the trigger (or the final time)
  Trigger trigger = Trigger::none;
  long steps = 0;
  double max_u = 0.0;  // at the last finite state
  double max_ut = 0.0;

  double midpoint() const { return 0.5 * (t_lower + t_upper); }
};

/// Second-order radial Laplacian u_rr + (N-1)/r u_r on r_i = i dr.
/// Node 0 uses N u_rr(0) with u_{-1} = u_1; the last node is a Dirichlet node and gets 0.
void spatial_operator(std::span<const double> u, int N, double dr, std::span<double> out);

/// CFL step min(dt_max, cfl dr / max(t^m, dr^m)).
double step_size(double t, const SolverConfig& config);

/// Dirichlet data (u, u_t) at the outer node as a function of time.
using BoundaryFn = std::function<std::pair<double, double>(double t)>;

/// Method-of-lines system for the radial equation, advanced by classical RK4.
class RadialSystem {
 public:
  RadialSystem(const ModelParams& params, double dr, std::size_t nodes, BoundaryFn boundary = {});

  std::size_t nodes() const { return nodes_; }
  double dr() const { return dr_; }

  /// du = v, dv = t^{2m} L u + a |v|^p + b |u|^q (the Dirichlet node gets zero derivatives).
  void rhs(double t, std::span<const double> u, std::span<const double> v, std::span<double> du,
           std::span<double> dv) const;

  /// One RK4 step of size dt in place; the boundary node is imposed at every stage.
  void step(SolutionState& state, double dt);

  void apply_boundary(double t, std::span<double> u, std::span<double> v) const;

 private:
  ModelParams params_;
  NonlinearWeights weights_;
  double dr_;
  std::size_t nodes_;
  BoundaryFn boundary_;
  mutable std::vector<double> lap_;
  std::vector<double> ku_[4], kv_[4], su_, sv_;
};

/// Initial state u = eps f, u_t = eps g on the config grid.
SolutionState initial_state(const SolverConfig& config);

/// Right-hand side of the first-order system for a state on the config grid.
std::pair<std::vector<double>, std::vector<double>> rhs(const SolutionState& state,
                                                        const SolverConfig& config);

/// Advance by one CFL step (or less, to stay within t_max).
SolutionState step(const SolutionState& state, const SolverConfig& config);

using SnapshotSink = std::function<void(const SolutionState&)>;

/// Integrate until t_max, a blow-up trigger or the step floor. Snapshots go to the sink
/// at t = 0, at every multiple of snapshot_every and at the last finite state.
BlowupReport run(const SolverConfig& config, const SnapshotSink& sink);

struct RunResult {
  std::vector<SolutionState> snapshots;
  BlowupReport report;
};
RunResult run(const SolverConfig& config);

/// Largest r_i with |u_i| > rel_threshold * max |u| (0 for the zero state).
double support_radius(const SolutionState& state, double dr, double rel_threshold = 1e-10);

}  // namespace tricomi::solver
