#include "tricomi/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tricomi/error.hpp"
#include "tricomi/gamma.hpp"
#include "tricomi/quadrature.hpp"
#include "tricomi/specfun.hpp"
#include "tricomi/testfun.hpp"

namespace tricomi::functionals {
namespace {

constexpr double kMaxExp = 700.0;

// rho'/rho with the t = 0 limit.
double rho_log_derivative(double m, double t) {
  if (t == 0.0) return specfun::rho_prime_at_zero(m);
  return std::pow(t, m) * specfun::log_ratio(m, t);
}

double inf_over(Window w, const auto& f) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = w.first; i <= w.last; ++i) lo = std::min(lo, f(i));
  return lo;
}

}  // namespace

void FunctionalTrace::validate() const {
  const std::size_t n = times.size();
  for (const auto* col : {&G1, &G2, &F, &Fp, &Nterm, &W, &Fpp_raw}) {
    if (col->size() != n) throw ValidationError("FunctionalTrace: column lengths differ");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(times[i] > times[i - 1]))
      throw ValidationError("FunctionalTrace: times must increase strictly");
  }
}

TraceBuilder::TraceBuilder(const ModelParams& params, double dr, std::size_t nodes)
    : params_(params), w_(weights(params.mode)), dr_(dr), nodes_(nodes),
      area_(sphere_area(params.N)) {
  if (!(dr > 0.0) || nodes < 3) throw ValidationError("TraceBuilder: need dr > 0 and >= 3 nodes");
  phi_scaled_.resize(nodes);
  radial_.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double r = static_cast<double>(i) * dr;
    phi_scaled_[i] = testfun::phi_scaled(params.N, r);
    radial_[i] = params.N == 1 ? 1.0 : std::pow(r, params.N - 1);
  }
  for (auto& b : buf_) b.resize(nodes);
}

TraceBuilder::TraceBuilder(const solver::SolverConfig& config)
    : TraceBuilder(config.params, config.dr, config.node_count()) {}

void TraceBuilder::operator()(const solver::SolutionState& s) {
  if (s.u.size() != nodes_ || s.v.size() != nodes_)
    throw ValidationError("TraceBuilder: snapshot grid does not match");
  if (!trace_.times.empty() && !(s.t > trace_.times.back()))
    throw ValidationError("TraceBuilder: snapshot times must increase strictly");

  const double m = params_.m;
  const double x = specfun::xi(m, s.t);
  const double rs = specfun::rho_scaled(m, s.t);
  const double lr = rho_log_derivative(m, s.t);

  // psi = rho_scaled e^{r - xi} phi_scaled, evaluated without forming rho or phi.
  auto& uw = buf_[0];
  auto& vw = buf_[1];
  auto& u1 = buf_[2];
  auto& v1 = buf_[3];
  auto& nw = buf_[4];
  auto& n1 = buf_[5];
  for (std::size_t i = 0; i < nodes_; ++i) {
    const double u = s.u[i];
    const double v = s.v[i];
    const double nl = w_.a * std::pow(std::abs(v), params_.p) + w_.b * std::pow(std::abs(u), params_.q);
    const double rad = radial_[i];
    u1[i] = u * rad;
    v1[i] = v * rad;
    n1[i] = nl * rad;
    if (u == 0.0 && v == 0.0) {
      uw[i] = vw[i] = nw[i] = 0.0;
      continue;
    }
    const double arg = std::min(static_cast<double>(i) * dr_ - x, kMaxExp);
    const double psi = rs * phi_scaled_[i] * std::exp(arg) * rad;
    uw[i] = u * psi;
    vw[i] = v * psi;
    nw[i] = nl * psi;
  }
  const double G1 = area_ * quad::simpson(uw, dr_);
  const double G2 = area_ * quad::simpson(vw, dr_);
  trace_.times.push_back(s.t);
  trace_.G1.push_back(G1);
  trace_.G2.push_back(G2);
  trace_.F.push_back(area_ * quad::simpson(u1, dr_));
  trace_.Fp.push_back(area_ * quad::simpson(v1, dr_));
  trace_.Nterm.push_back(area_ * quad::simpson(nw, dr_));
  trace_.Fpp_raw.push_back(area_ * quad::simpson(n1, dr_));
  trace_.W.push_back(G2 - lr * G1);
}

FunctionalTrace compute_trace(std::span<const solver::SolutionState> snapshots,
                              const ModelParams& params, double dr) {
  if (snapshots.empty()) return {};
  TraceBuilder b(params, dr, snapshots.front().u.size());
  for (const auto& s : snapshots) b(s);
  return b.take();
}

std::vector<double> weak_identity_residual(const FunctionalTrace& trace, double c_m,
                                           double epsilon) {
  trace.validate();
  const auto integral = quad::cumulative_trapezoid(trace.times, trace.Nterm);
  std::vector<double> out(trace.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = trace.W[i] - (integral.empty() ? 0.0 : integral[i]) - epsilon * c_m;
  return out;
}

Window window(const FunctionalTrace& trace, double t_from, double t_to) {
  Window w;
  bool found = false;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double t = trace.times[i];
    if (t < t_from || t > t_to) continue;
    if (!found) w.first = i;
    w.last = i;
    found = true;
  }
  if (!found) throw ValidationError("window: no trace samples in the requested range");
  return w;
}

std::pair<double, double> late_window(const FunctionalTrace& trace, double m,
                                      const solver::BlowupReport& report) {
  trace.validate();
  if (trace.size() == 0) throw ValidationError("late_window: empty trace");
  const auto th = specfun::threshold_times(m);
  const double from = std::max(th.half_fivefourths, th.exp_bound);
  double to = trace.times.back();
  if (report.outcome != solver::Outcome::reached_t_max) {
    const auto it = std::upper_bound(trace.times.begin(), trace.times.end(), report.t_lower);
    const auto idx = static_cast<std::ptrdiff_t>(it - trace.times.begin()) - 1 - 5;
    to = idx >= 0 ? trace.times[static_cast<std::size_t>(idx)] : trace.times.front();
  }
  return {from, to};
}

InequalityReport check_G1_lower_bound(const FunctionalTrace& trace, double m, double epsilon,
                                      double t_from, double t_to) {
  trace.validate();
  const Window w = window(trace, t_from, t_to);
  auto scaled = [&](std::size_t i) { return std::pow(trace.times[i], m) * trace.G1[i] / epsilon; };
  InequalityReport rep;
  rep.name = "G1_lower_bound";
  rep.t_from = trace.times[w.first];
  rep.t_to = trace.times[w.last];
  rep.fitted_constant = inf_over(w, scaled);
  Window head = w;
  head.last = w.first + (w.last - w.first) * 3 / 4;
  const double head_inf = inf_over(head, scaled);
  rep.margin = rep.fitted_constant;
  rep.passed = std::isfinite(rep.fitted_constant) && rep.fitted_constant > 0.0 &&
               rep.fitted_constant >= 0.5 * head_inf;
  return rep;
}

InequalityReport check_G2_properties(const FunctionalTrace& trace, double epsilon, double t_from,
                                     double t_to) {
  trace.validate();
  constexpr double kAllowance = 1e-3;
  const Window w = window(trace, t_from, t_to);
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= w.last; ++i) lowest = std::min(lowest, trace.G2[i] / epsilon);
  InequalityReport rep;
  rep.name = "G2_properties";
  rep.t_from = trace.times[w.first];
  rep.t_to = trace.times[w.last];
  rep.fitted_constant = inf_over(w, [&](std::size_t i) { return trace.G2[i] / epsilon; });
  rep.margin = lowest + kAllowance;
  rep.passed = rep.margin >= 0.0 && std::isfinite(rep.fitted_constant) && rep.fitted_constant > 0.0;
  return rep;
}

Eq6Residuals check_eq6_identity(const FunctionalTrace& trace, double c_m, double epsilon,
                                double m, double t_to) {
  trace.validate();
  if (trace.size() < 3) throw ValidationError("check_eq6_identity: need at least three samples");
  const auto integral = quad::cumulative_trapezoid(trace.times, trace.Nterm);
  Eq6Residuals out;
  out.scale_first = epsilon * c_m;
  double max_n = 0.0;
  double max_g1 = 0.0;
  const double end = t_to < 0.0 ? trace.times.back() : t_to;
  for (std::size_t i = 1; i + 1 < trace.size(); ++i) {
    const double t = trace.times[i];
    if (t > end) break;
    const double h0 = t - trace.times[i - 1];
    const double h1 = trace.times[i + 1] - t;
    // three-point derivative on a nonuniform grid
    auto d = [&](const std::vector<double>& y) {
      return (-h1 / (h0 * (h0 + h1))) * y[i - 1] + ((h1 - h0) / (h0 * h1)) * y[i] +
             (h0 / (h1 * (h0 + h1))) * y[i + 1];
    };
    const double lr = rho_log_derivative(m, t);
    const double t2m = std::pow(t, 2.0 * m);
    out.times.push_back(t);
    out.first.push_back(d(trace.G1) - 2.0 * lr * trace.G1[i] - integral[i] - epsilon * c_m);
    out.second.push_back(d(trace.G2) - lr * trace.G2[i] - t2m * trace.G1[i] - trace.Nterm[i]);
    max_n = std::max(max_n, std::abs(trace.Nterm[i]));
    max_g1 = std::max(max_g1, t2m * std::abs(trace.G1[i]));
  }
  out.scale_second = max_n > 0.0 ? max_n : max_g1;
  for (double r : out.first) out.max_rel_first = std::max(out.max_rel_first, std::abs(r));
  for (double r : out.second) out.max_rel_second = std::max(out.max_rel_second, std::abs(r));
  if (out.scale_first > 0.0) out.max_rel_first /= out.scale_first;
  if (out.scale_second > 0.0) out.max_rel_second /= out.scale_second;
  return out;
}

FDynamicsReport check_F_dynamics(const FunctionalTrace& trace, const ModelParams& params,
                                 double t_from, double t_to) {
  trace.validate();
  if (params.mode == NonlinearityMode::linear)
    throw ValidationError("check_F_dynamics: needs an active nonlinear term");
  const Window w = window(trace, t_from, t_to);
  FDynamicsReport rep;
  double max_raw = 0.0;
  double max_res = 0.0;
  for (std::size_t i = std::max<std::size_t>(w.first, 1); i <= w.last && i + 1 < trace.size(); ++i) {
    const double h0 = trace.times[i] - trace.times[i - 1];
    const double h1 = trace.times[i + 1] - trace.times[i];
    const double fpp = 2.0 * (h0 * trace.F[i + 1] - (h0 + h1) * trace.F[i] + h1 * trace.F[i - 1]) /
                       (h0 * h1 * (h0 + h1));
    max_res = std::max(max_res, std::abs(fpp - trace.Fpp_raw[i]));
    max_raw = std::max(max_raw, std::abs(trace.Fpp_raw[i]));
  }
  rep.identity_residual = max_raw > 0.0 ? max_res / max_raw : std::numeric_limits<double>::infinity();

  const double k = params.N * (params.q - 1.0) * (params.m + 1.0);
  auto& lb = rep.lower_bound;
  lb.name = "F_kato_lower_bound";
  lb.t_from = trace.times[w.first];
  lb.t_to = trace.times[w.last];
  lb.fitted_constant = inf_over(w, [&](std::size_t i) {
    const double F = trace.F[i];
    if (!(F > 0.0)) return -std::numeric_limits<double>::infinity();
    return trace.Fpp_raw[i] * std::pow(1.0 + trace.times[i], k) / std::pow(F, params.q);
  });
  lb.margin = lb.fitted_constant;
  lb.passed = std::isfinite(lb.fitted_constant) && lb.fitted_constant > 0.0;
  return rep;
}

InequalityReport check_F_lower_bound(const FunctionalTrace& trace, const ModelParams& params,
                                     double epsilon, double t_from, double t_to) {
  trace.validate();
  const Window w = window(trace, t_from, t_to);
  const double m = params.m;
  const double a =
      2.0 - ((m + 1.0) * (params.N - 1) * (params.p - 2.0) - m * params.p) / 2.0;
  InequalityReport rep;
  rep.name = "F_growth_lower_bound";
  rep.t_from = trace.times[w.first];
  rep.t_to = trace.times[w.last];
  rep.fitted_constant = inf_over(w, [&](std::size_t i) {
    const double t = trace.times[i];
    if (!(t > 0.0)) return std::numeric_limits<double>::infinity();
    return trace.F[i] / (std::pow(epsilon, params.p) * std::pow(t, a));
  });
  rep.margin = rep.fitted_constant;
  rep.passed = std::isfinite(rep.fitted_constant) && rep.fitted_constant > 0.0;
  return rep;
}

}  // namespace tricomi::functionals
