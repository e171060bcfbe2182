#pragma once

#include <span>
#include <string>
#include <vector>

#include "tricomi/exponents.hpp"
#include "tricomi/solver.hpp"

// Integral functionals of a radial solution against psi = rho(t) phi(|x|),
// and the ODE identities and lower bounds they satisfy.

namespace tricomi::functionals {

struct FunctionalTrace {
  std::vector<double> times;
  std::vector<double> G1;       // int u psi
  std::vector<double> G2;       // int u_t psi
  std::vector<double> F;        // int u
  std::vector<double> Fp;       // int u_t
  std::vector<double> Nterm;    // int (a |u_t|^p + b |u|^q) psi
  std::vector<double> W;        // int (u_t psi - u psi_t)
  std::vector<double> Fpp_raw;  // int (a |u_t|^p + b |u|^q)

  std::size_t size() const { return times.size(); }
  /// Throws ValidationError unless all columns have equal length and times increase strictly.
  void validate() const;
};

/// Accumulates a trace one snapshot at a time; usable directly as a solver::SnapshotSink.
class TraceBuilder {
 public:
  TraceBuilder(const ModelParams& params, double dr, std::size_t nodes);
  explicit TraceBuilder(const solver::SolverConfig& config);

  /// Throws ValidationError when the snapshot grid differs from the builder's.
  void operator()(const solver::SolutionState& s);

  const FunctionalTrace& trace() const { return trace_; }
  FunctionalTrace take() { return std::move(trace_); }

 private:
  ModelParams params_;
  NonlinearWeights w_;
  double dr_;
  std::size_t nodes_;
  double area_;
  std::vector<double> phi_scaled_;  // e^{-r} phi(r)
  std::vector<double> radial_;      // r^{N-1}
  std::vector<double> buf_[6];
  FunctionalTrace trace_;
};

FunctionalTrace compute_trace(std::span<const solver::SolutionState> snapshots,
                              const ModelParams& params, double dr);

/// W(t) - int_0^t N - eps c_m.
std::vector<double> weak_identity_residual(const FunctionalTrace& trace, double c_m,
                                           double epsilon);

struct InequalityReport {
  std::string name;
  double t_from = 0.0;
  double t_to = 0.0;
  double fitted_constant = 0.0;
  bool passed = false;
  double margin = 0.0;
};

/// Trace indices [first, last] with t_from <= t <= t_to; throws ValidationError when empty.
struct Window {
  std::size_t first = 0;
  std::size_t last = 0;
};
Window window(const FunctionalTrace& trace, double t_from, double t_to);

/// Late-time window: from the larger specfun threshold to the end of the trace,
/// or to five samples before the bracket's lower edge when the run blew up.
std::pair<double, double> late_window(const FunctionalTrace& trace, double m,
                                      const solver::BlowupReport& report);

/// inf of t^m G1 / eps over the window; also requires that extending the window
/// from its first three quarters to the whole keeps the infimum within a factor 2.
InequalityReport check_G1_lower_bound(const FunctionalTrace& trace, double m, double epsilon,
                                      double t_from, double t_to);

/// G2 >= -1e-3 eps everywhere and inf over the window of G2 / eps > 0.
InequalityReport check_G2_properties(const FunctionalTrace& trace, double epsilon, double t_from,
                                     double t_to);

struct Eq6Residuals {
  std::vector<double> times;  // interior samples
  std::vector<double> first;   // G1' + Gamma G1 - int N - eps c_m
  std::vector<double> second;  // G2' - (rho'/rho) G2 - t^{2m} G1 - N
  double scale_first = 0.0;    // eps c_m
  double scale_second = 0.0;   // max N, or max t^{2m} |G1| when N vanishes
  double max_rel_first = 0.0;
  double max_rel_second = 0.0;
};

/// Both residuals with three-point centered differences of the trace.
/// Throws ValidationError with fewer than three samples.
Eq6Residuals check_eq6_identity(const FunctionalTrace& trace, double c_m, double epsilon,
                                double m, double t_to = -1.0);

struct FDynamicsReport {
  double identity_residual = 0.0;  // max |F'' - Fpp_raw| / max Fpp_raw over the window interior
  InequalityReport lower_bound;    // inf Fpp_raw (1+t)^{N(q-1)(m+1)} / F^q
};

/// Second difference of F against Fpp_raw, and the Kato-type lower bound constant.
/// Requires a mode with the |u|^q term or the |u_t|^p term active.
FDynamicsReport check_F_dynamics(const FunctionalTrace& trace, const ModelParams& params,
                                 double t_from, double t_to);

/// inf of F / (eps^p t^{2 - ((m+1)(N-1)(p-2) - m p)/2}) over the window.
InequalityReport check_F_lower_bound(const FunctionalTrace& trace, const ModelParams& params,
                                     double epsilon, double t_from, double t_to);

}  // namespace tricomi::functionals
