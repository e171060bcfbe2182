#pragma once

#include <set>
#include <string>

#include "tricomi/harness.hpp"
#include "tricomi/kvconfig.hpp"
#include "tricomi/solver.hpp"

namespace tricomi::cli {

/// Keys accepted by `solve --config` and `verify lemmas --config`.
const std::set<std::string>& solver_keys();
/// solver_keys plus the sweep plan keys.
const std::set<std::string>& plan_keys();

/// Model, data and numerics from a parsed file; unset keys keep the library defaults.
/// Data are bumps amplitude * (1 - (r/R)^2)^k for f and g.
solver::SolverConfig solver_config(const KvConfig& kv);

/// Sweep plan; eps_values defaults to 1, 0.71, 0.5, 0.35, 0.25 and t_max to 50.
harness::SweepPlan sweep_plan(const KvConfig& kv);

}  // namespace tricomi::cli
