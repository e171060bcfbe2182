#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "tricomi/exponents.hpp"
#include "tricomi/scaling.hpp"
#include "tricomi/solver.hpp"

namespace tricomi::harness {

enum class Target { pde, ode_f, ode_h };
std::string_view to_string(Target t);
Target parse_target(std::string_view text);

struct SweepPlan {
  solver::SolverConfig base;  // params, data and numerics; epsilon is overridden per run
  std::vector<double> eps_values;
  Target target = Target::pde;
  // ODE oracle constants
  double A = 1.0;   // ode_f
  double C = 1.0;   // ode_h
  double T3 = 1.0;  // ode_h
  double H0_scale = 1.0;
  /// Worker count; 0 reads TRICOMI_LAB_THREADS and falls back to the hardware concurrency.
  int threads = 0;
  std::string output_dir;  // empty: no files
  bool svg = false;

  /// Throws ValidationError for an empty, non-positive or repeated eps list or bad params.
  void validate() const;
};

struct SweepRow {
  double eps = 0.0;
  double T_lower = 0.0;
  double T_upper = 0.0;
  solver::Outcome outcome = solver::Outcome::reached_t_max;
  solver::Trigger trigger = solver::Trigger::none;
  double T_mid() const { return 0.5 * (T_lower + T_upper); }
};

struct SweepResult {
  std::vector<SweepRow> rows;  // in eps_values order
  ScalingFit fit;
};

/// Worker count from TRICOMI_LAB_THREADS (if set and positive) or the hardware.
int worker_count(int requested);

/// Runs every eps (in parallel, results ordered by eps index) and fits the lifespan law.
/// The theoretical exponent comes from the exponents module for pde and ode_f,
/// and from the H-equation law for ode_h. Writes sweep.csv (and SVG) when output_dir is set.
SweepResult sweep(const SweepPlan& plan);

struct RegionCell {
  double p = 0.0;
  double q = 0.0;
  exponents::RegionVerdict verdict;
  double lambda = 0.0;
};

/// resolution x resolution grid over [p_lo, p_hi] x [q_lo, q_hi], row-major in q then p.
std::vector<RegionCell> region_map(int N, double m, double p_lo, double p_hi, double q_lo,
                                   double q_hi, int resolution,
                                   NonlinearityMode mode = NonlinearityMode::mixed);

/// %.17g formatting used by every CSV writer.
std::string fmt(double x);

void write_sweep_csv(std::FILE* out, const SweepResult& result);
void write_region_csv(std::FILE* out, const std::vector<RegionCell>& cells);

/// Line chart of log T against log eps as standalone SVG markup.
std::string sweep_svg(const SweepResult& result);

}  // namespace tricomi::harness
