#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "json.hpp"
#include "tricomi/error.hpp"
#include "tricomi/exponents.hpp"
#include "tricomi/functionals.hpp"
#include "tricomi/harness.hpp"
#include "tricomi/oracle.hpp"
#include "tricomi/specfun.hpp"
#include "tricomi/testfun.hpp"

namespace tricomi::cli {
namespace {

using nlohmann::json;
using harness::fmt;

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json opt_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json law_json(const std::optional<exponents::LifespanLaw>& law) {
  if (!law) return nullptr;
  return {{"kind", exponents::to_string(law->kind)}, {"exponent", law->exponent}};
}

json fit_json(const ScalingFit& f) {
  json rows = json::array();
  for (std::size_t i = 0; i < f.eps.size(); ++i) {
    rows.push_back({{"eps", f.eps[i]},
                    {"T", number_or_null(f.T[i])},
                    {"T_width", i < f.T_width.size() ? number_or_null(f.T_width[i]) : json(nullptr)}});
  }
  return {{"kind", exponents::to_string(f.kind)},
          {"slope", f.slope},
          {"intercept", f.intercept},
          {"r_squared", f.r_squared},
          {"theoretical", number_or_null(f.theoretical)},
          {"curvature", f.curvature},
          {"partial", f.partial},
          {"excluded_eps", f.excluded_eps},
          {"warnings", f.warnings},
          {"points", rows}};
}

json report_json(const solver::BlowupReport& r) {
  return {{"outcome", solver::to_string(r.outcome)},
          {"trigger", solver::to_string(r.trigger)},
          {"t_lower", r.t_lower},
          {"t_upper", r.t_upper},
          {"t_mid", r.midpoint()},
          {"steps", r.steps},
          {"max_u", number_or_null(r.max_u)},
          {"max_ut", number_or_null(r.max_ut)}};
}

json inequality_json(const functionals::InequalityReport& r) {
  return {{"name", r.name},
          {"t_from", r.t_from},
          {"t_to", r.t_to},
          {"fitted_constant", number_or_null(r.fitted_constant)},
          {"passed", r.passed},
          {"margin", number_or_null(r.margin)}};
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  auto v = linspace(std::log(a), std::log(b), n);
  for (double& x : v) x = std::exp(x);
  return v;
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::ofstream f(std::filesystem::path(dir) / name);
  if (!f) throw NumericalError("cannot write " + (std::filesystem::path(dir) / name).string());
  return f;
}

// ---------------------------------------------------------------- subcommands

struct ExponentsArgs {
  int N = 3;
  double m = 0.0;
  std::optional<double> p, q;
  std::string mode = "mixed";
};

int cmd_exponents(const ExponentsArgs& a, std::ostream& out) {
  const auto set = exponents::exponent_set(a.N, a.m, a.p, a.q);
  json j = {{"N", a.N},
            {"m", a.m},
            {"q_strauss", opt_json(set.q_strauss)},
            {"p_glassey", opt_json(set.p_glassey)},
            {"q_crit", opt_json(set.q_crit_tricomi)},
            {"p_crit", opt_json(set.p_crit_tricomi)}};
  if (a.p && a.q) {
    const ModelParams mp{a.m, a.N, *a.p, *a.q, parse_mode(a.mode)};
    const auto v = exponents::classify(mp);
    std::optional<exponents::LifespanLaw> law;
    try {
      law = exponents::lifespan_prediction(mp);
    } catch (const DomainError&) {
    }
    j["p"] = *a.p;
    j["q"] = *a.q;
    j["mode"] = to_string(mp.mode);
    j["lambda"] = opt_json(set.lambda_mixed);
    j["verdict"] = exponents::to_string(v.verdict);
    j["verdict_code"] = exponents::verdict_code(v.verdict);
    j["boundary"] = v.boundary;
    j["verdict_law"] = law_json(v.lifespan);
    j["lifespan"] = law_json(law);
  } else if (a.p || a.q) {
    throw ValidationError("exponents: give both --p and --q, or neither");
  }
  out << j.dump(2) << '\n';
  return 0;
}

struct RegionArgs {
  int N = 3;
  double m = 0.0;
  double p_min = 1.05, p_max = 4.0, q_min = 1.05, q_max = 4.0;
  int resolution = 60;
  std::string mode = "mixed";
  std::string out_file;
};

int cmd_region(const RegionArgs& a, std::ostream& out) {
  const auto cells =
      harness::region_map(a.N, a.m, a.p_min, a.p_max, a.q_min, a.q_max, a.resolution, parse_mode(a.mode));
  if (a.out_file.empty()) {
    std::FILE* tmp = std::tmpfile();
    harness::write_region_csv(tmp, cells);
    std::rewind(tmp);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, tmp)) > 0) out.write(buf, static_cast<std::streamsize>(n));
    std::fclose(tmp);
  } else {
    std::FILE* f = std::fopen(a.out_file.c_str(), "w");
    if (!f) throw NumericalError("cannot write " + a.out_file);
    harness::write_region_csv(f, cells);
    std::fclose(f);
  }
  return 0;
}

struct RhoArgs {
  double m = 0.0;
  double t_min = 0.0, t_max = 5.0;
  int points = 101;
};

int cmd_rho(const RhoArgs& a, std::ostream& out) {
  if (a.points < 1 || !(a.t_min >= 0.0) || !(a.t_max >= a.t_min))
    throw ValidationError("rho: need points >= 1 and 0 <= t_min <= t_max");
  out << "t,rho,rho_prime,gamma,log_ratio\n";
  for (double t : linspace(a.t_min, a.t_max, a.points)) {
    const auto e = specfun::evaluate_rho(a.m, t);
    out << fmt(e.t) << ',' << fmt(e.rho) << ',' << fmt(e.rho_prime) << ',' << fmt(e.gamma) << ','
        << fmt(e.log_ratio) << '\n';
  }
  return 0;
}

struct BesselArgs {
  double nu = 0.5;
  double z_min = 0.1, z_max = 20.0;
  int points = 50;
};

int cmd_bessel(const BesselArgs& a, std::ostream& out) {
  if (a.points < 1 || !(a.z_min > 0.0) || !(a.z_max >= a.z_min))
    throw ValidationError("bessel: need points >= 1 and 0 < z_min <= z_max");
  out << "z,K,K_scaled,K_prime\n";
  for (double z : logspace(a.z_min, a.z_max, a.points)) {
    out << fmt(z) << ',' << fmt(specfun::bessel_k(a.nu, z)) << ','
        << fmt(specfun::bessel_k_scaled(a.nu, z)) << ',' << fmt(specfun::bessel_k_prime(a.nu, z))
        << '\n';
  }
  return 0;
}

struct PhiArgs {
  int N = 3;
  std::vector<double> r{1.0};
};

int cmd_phi(const PhiArgs& a, std::ostream& out) {
  out << "r,phi,phi_prime\n";
  for (double r : a.r)
    out << fmt(r) << ',' << fmt(testfun::phi(a.N, r)) << ',' << fmt(testfun::phi_prime(a.N, r)) << '\n';
  return 0;
}

struct SolveArgs {
  std::string config;
  std::string out_dir;
  std::optional<double> snapshot_every;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  auto cfg = solver_config(KvConfig::load(a.config, solver_keys()));
  if (a.snapshot_every) cfg.snapshot_every = *a.snapshot_every;
  cfg.validate();
  std::ofstream snap;
  if (!a.out_dir.empty()) {
    ensure_dir(a.out_dir);
    snap = open_out(a.out_dir, "snapshots.csv");
    snap << "t,r,u,v\n";
  }
  double worst_excess = -std::numeric_limits<double>::infinity();
  const auto rep = solver::run(cfg, [&](const solver::SolutionState& s) {
    const double limit = specfun::xi(cfg.params.m, s.t) + cfg.f.support_radius + 5.0 * cfg.dr;
    worst_excess = std::max(worst_excess, solver::support_radius(s, cfg.dr) - limit);
    if (!snap.is_open()) return;
    for (std::size_t i = 0; i < s.u.size(); ++i)
      snap << fmt(s.t) << ',' << fmt(static_cast<double>(i) * cfg.dr) << ',' << fmt(s.u[i]) << ','
           << fmt(s.v[i]) << '\n';
  });
  json j = report_json(rep);
  j["support_excess"] = number_or_null(worst_excess);
  j["nodes"] = cfg.node_count();
  j["outer_radius"] = cfg.outer_radius();
  out << j.dump(2) << '\n';
  if (!a.out_dir.empty()) open_out(a.out_dir, "report.json") << j.dump(2) << '\n';
  return 0;
}

struct Lemma31Args {
  int N = 3;
  double m = 0.0;
  double r_exp = 2.0;
  double t_min = 1.0, t_max = 20.0, R = 1.0;
  int points = 40;
};

int cmd_lemma31(const Lemma31Args& a, std::ostream& out, std::ostream& err) {
  if (a.points < 2) throw ValidationError("verify lemma31: need points >= 2");
  const auto grid = linspace(a.t_min, a.t_max, a.points);
  const auto rep = testfun::lemma31_bound_check(a.N, a.m, a.r_exp, grid, a.R);
  out << "t,lhs,rhs,ratio\n";
  for (std::size_t i = 0; i < rep.t.size(); ++i)
    out << fmt(rep.t[i]) << ',' << fmt(rep.lhs[i]) << ',' << fmt(rep.rhs[i]) << ',' << fmt(rep.ratio[i])
        << '\n';
  err << "sup_ratio " << fmt(rep.sup_ratio) << " tail_spread " << fmt(rep.tail_spread) << " passed "
      << (rep.passed ? "true" : "false") << '\n';
  return 0;
}

struct LemmasArgs {
  std::string config;
  std::string out_dir;
};

int cmd_lemmas(const LemmasArgs& a, std::ostream& out) {
  auto cfg = solver_config(KvConfig::load(a.config, solver_keys()));
  if (cfg.snapshot_every == 0.0) cfg.snapshot_every = cfg.dr;
  functionals::TraceBuilder builder(cfg);
  const auto rep = solver::run(cfg, std::ref(builder));
  const auto trace = builder.take();
  const int N = cfg.params.N;
  const double m = cfg.params.m;
  const double eps = cfg.epsilon;
  const double cm = testfun::c_m_constant(cfg.f, cfg.g, N, m);
  const auto weak = functionals::weak_identity_residual(trace, cm, eps);
  const auto [from, to] = functionals::late_window(trace, m, rep);

  json reports = json::array();
  reports.push_back(inequality_json(functionals::check_G1_lower_bound(trace, m, eps, from, to)));
  reports.push_back(inequality_json(functionals::check_G2_properties(trace, eps, from, to)));

  functionals::InequalityReport w;
  w.name = "weak_identity";
  w.t_from = trace.times.front();
  w.t_to = to;
  double worst = 0.0;
  for (std::size_t i = 0; i < trace.size() && trace.times[i] <= to; ++i)
    worst = std::max(worst, std::abs(weak[i]));
  w.fitted_constant = worst / (eps * cm);
  w.margin = 1e-2 - w.fitted_constant;
  w.passed = w.margin >= 0.0;
  reports.push_back(inequality_json(w));

  const auto e6 = functionals::check_eq6_identity(trace, cm, eps, m, to);
  for (int k = 0; k < 2; ++k) {
    functionals::InequalityReport r;
    r.name = k == 0 ? "G1_identity" : "G2_identity";
    r.t_from = trace.times.front();
    r.t_to = to;
    r.fitted_constant = k == 0 ? e6.max_rel_first : e6.max_rel_second;
    r.margin = 2e-2 - r.fitted_constant;
    r.passed = r.margin >= 0.0;
    reports.push_back(inequality_json(r));
  }
  if (cfg.params.mode != NonlinearityMode::linear) {
    const auto fd = functionals::check_F_dynamics(trace, cfg.params, trace.times.front(), to);
    functionals::InequalityReport r;
    r.name = "F_second_difference";
    r.t_from = trace.times.front();
    r.t_to = to;
    r.fitted_constant = fd.identity_residual;
    r.margin = 2e-2 - r.fitted_constant;
    r.passed = r.margin >= 0.0;
    reports.push_back(inequality_json(r));
    reports.push_back(inequality_json(fd.lower_bound));
    if (weights(cfg.params.mode).a != 0.0)
      reports.push_back(inequality_json(functionals::check_F_lower_bound(trace, cfg.params, eps, from, to)));
  }
  out << reports.dump(2) << '\n';

  if (!a.out_dir.empty()) {
    ensure_dir(a.out_dir);
    auto f = open_out(a.out_dir, "trace.csv");
    f << "t,G1,G2,F,Fp,Nterm,W,Fpp_raw,weak_residual\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
      f << fmt(trace.times[i]) << ',' << fmt(trace.G1[i]) << ',' << fmt(trace.G2[i]) << ','
        << fmt(trace.F[i]) << ',' << fmt(trace.Fp[i]) << ',' << fmt(trace.Nterm[i]) << ',' << fmt(trace.W[i]) << ','
        << fmt(trace.Fpp_raw[i]) << ',' << fmt(weak[i]) << '\n';
    }
    auto e = open_out(a.out_dir, "identities.csv");
    e << "t,first,second\n";
    for (std::size_t i = 0; i < e6.times.size(); ++i)
      e << fmt(e6.times[i]) << ',' << fmt(e6.first[i]) << ',' << fmt(e6.second[i]) << '\n';
    open_out(a.out_dir, "reports.json") << reports.dump(2) << '\n';
  }
  return 0;
}

struct OdeArgs {
  int N = 3;
  double m = 0.0, p = 2.0, q = 2.0;
  std::vector<double> eps;
  std::vector<double> eps_range;  // lo hi count
  double A = 1.0, C = 1.0, T3 = 1.0;
  std::string out_dir;
};

std::vector<double> eps_list(const OdeArgs& a) {
  if (!a.eps.empty()) return a.eps;
  if (a.eps_range.size() == 3) {
    const int n = static_cast<int>(a.eps_range[2]);
    if (!(a.eps_range[0] > 0.0) || !(a.eps_range[1] > a.eps_range[0]) || n < 2 ||
        a.eps_range[2] != n)
      throw ValidationError("--eps-range needs 0 < lo < hi and an integer count >= 2");
    return logspace(a.eps_range[0], a.eps_range[1], n);
  }
  throw ValidationError("give --eps or --eps-range");
}

int emit_fit(const ScalingFit& fit, const OdeArgs& a, std::ostream& out) {
  out << fit_json(fit).dump(2) << '\n';
  if (!a.out_dir.empty()) {
    ensure_dir(a.out_dir);
    auto f = open_out(a.out_dir, "oracle.csv");
    f << "eps,T_star\n";
    for (std::size_t i = 0; i < fit.eps.size(); ++i) f << fmt(fit.eps[i]) << ',' << fmt(fit.T[i]) << '\n';
    open_out(a.out_dir, "fit.json") << fit_json(fit).dump(2) << '\n';
  }
  return 0;
}

int cmd_ode_h(const OdeArgs& a, std::ostream& out) {
  const auto eps = eps_list(a);
  return emit_fit(oracle::h_ode_scaling_study(a.N, a.m, a.p, eps, a.C, a.T3), a, out);
}

int cmd_ode_f(const OdeArgs& a, std::ostream& out) {
  ModelParams{a.m, a.N, a.p, a.q, NonlinearityMode::mixed}.validate();
  const auto eps = eps_list(a);
  return emit_fit(oracle::f_ode_scaling_study(a.N, a.m, a.p, a.q, eps, a.A), a, out);
}

struct SweepArgs {
  std::string plan;
  std::string out_dir = "sweep_out";
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const auto kv = KvConfig::load(a.plan, plan_keys());
  auto plan = sweep_plan(kv);
  plan.output_dir = a.out_dir;
  const auto res = harness::sweep(plan);
  json fits = fit_json(res.fit);
  fits["target"] = harness::to_string(plan.target);
  fits["params"] = {{"m", plan.base.params.m},
                    {"N", plan.base.params.N},
                    {"p", plan.base.params.p},
                    {"q", plan.base.params.q},
                    {"mode", to_string(plan.base.params.mode)}};
  ensure_dir(a.out_dir);
  open_out(a.out_dir, "fits.json") << fits.dump(2) << '\n';

  const auto& mp = plan.base.params;
  const auto cells = harness::region_map(
      mp.N, mp.m, kv.number("region_p_min", 1.05), kv.number("region_p_max", 4.0),
      kv.number("region_q_min", 1.05), kv.number("region_q_max", 4.0),
      kv.integer("region_resolution", 60), mp.mode);
  const auto path = (std::filesystem::path(a.out_dir) / "regionmap.csv").string();
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw NumericalError("cannot write " + path);
  harness::write_region_csv(f, cells);
  std::fclose(f);
  out << fits.dump(2) << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for the generalized Tricomi equation with mixed nonlinearities",
               "tricomi-lab"};
  app.require_subcommand(1);
  int verbosity = 0;
  app.add_flag("-v,--verbose", verbosity, "More diagnostics on stderr");

  ExponentsArgs ex;
  auto* s_ex = app.add_subcommand("exponents", "Critical exponents, Lambda, verdict and lifespan law (JSON)");
  s_ex->add_option("--N", ex.N, "Space dimension")->required();
  s_ex->add_option("--m", ex.m, "Tricomi exponent m >= 0")->required();
  s_ex->add_option("--p", ex.p, "Exponent of |u_t|^p");
  s_ex->add_option("--q", ex.q, "Exponent of |u|^q");
  s_ex->add_option("--mode", ex.mode, "mixed | derivative_only | power_only | linear");

  RegionArgs rg;
  auto* s_rg = app.add_subcommand("region-map", "Verdict grid over (p, q) as CSV");
  s_rg->add_option("--N", rg.N)->required();
  s_rg->add_option("--m", rg.m)->required();
  s_rg->add_option("--p-min", rg.p_min);
  s_rg->add_option("--p-max", rg.p_max);
  s_rg->add_option("--q-min", rg.q_min);
  s_rg->add_option("--q-max", rg.q_max);
  s_rg->add_option("--resolution", rg.resolution);
  s_rg->add_option("--mode", rg.mode);
  s_rg->add_option("--out", rg.out_file, "CSV file (default stdout)");

  RhoArgs rh;
  auto* s_rh = app.add_subcommand("rho", "Tabulate rho, rho', Gamma and the log ratio as CSV");
  s_rh->add_option("--m", rh.m)->required();
  s_rh->add_option("--t-min", rh.t_min);
  s_rh->add_option("--t-max", rh.t_max);
  s_rh->add_option("--points", rh.points);

  BesselArgs bs;
  auto* s_bs = app.add_subcommand("bessel", "Tabulate K_nu on a log grid as CSV");
  s_bs->add_option("--nu", bs.nu)->required();
  s_bs->add_option("--z-min", bs.z_min);
  s_bs->add_option("--z-max", bs.z_max);
  s_bs->add_option("--points", bs.points);

  PhiArgs ph;
  auto* s_ph = app.add_subcommand("phi", "Spatial test function phi and phi' as CSV");
  s_ph->add_option("--N", ph.N)->required();
  s_ph->add_option("--r", ph.r, "One or more radii")->required();

  SolveArgs sv;
  auto* s_sv = app.add_subcommand("solve", "Run the radial solver from a key = value config");
  s_sv->add_option("--config", sv.config)->required();
  s_sv->add_option("--out-dir", sv.out_dir, "Write report.json and snapshots.csv here");
  s_sv->add_option("--snapshot-every", sv.snapshot_every, "Snapshot cadence (overrides the config)");

  auto* s_vf = app.add_subcommand("verify", "Numerical checks of the test-function lemmas");
  s_vf->require_subcommand(1);
  Lemma31Args l31;
  auto* s_l31 = s_vf->add_subcommand("lemma31", "Integral bound of psi^r against its envelope (CSV)");
  s_l31->add_option("--N", l31.N)->required();
  s_l31->add_option("--m", l31.m)->required();
  s_l31->add_option("--r-exp", l31.r_exp)->required();
  s_l31->add_option("--t-min", l31.t_min);
  s_l31->add_option("--t-max", l31.t_max);
  s_l31->add_option("--points", l31.points);
  s_l31->add_option("--R", l31.R, "Support radius of the data");
  LemmasArgs lm;
  auto* s_lm = s_vf->add_subcommand("lemmas", "Functional lower bounds and identities on a solver run (JSON)");
  s_lm->add_option("--config", lm.config)->required();
  s_lm->add_option("--out-dir", lm.out_dir, "Write trace.csv, identities.csv and reports.json here");

  auto* s_od = app.add_subcommand("ode-oracle", "Lifespan scaling of the ODE models (JSON fit)");
  s_od->require_subcommand(1);
  OdeArgs oh, of;
  auto* s_oh = s_od->add_subcommand("h", "Riccati-type inequality H' = C H^p t^-beta, closed form");
  s_oh->add_option("--N", oh.N)->required();
  s_oh->add_option("--m", oh.m)->required();
  s_oh->add_option("--p", oh.p)->required();
  s_oh->add_option("--eps", oh.eps, "Amplitudes");
  s_oh->add_option("--eps-range", oh.eps_range, "lo hi count (log spaced)")->expected(3);
  s_oh->add_option("--C", oh.C);
  s_oh->add_option("--T3", oh.T3);
  s_oh->add_option("--out-dir", oh.out_dir);
  auto* s_of = s_od->add_subcommand("f", "Floored comparison equation for F = int u");
  s_of->add_option("--N", of.N)->required();
  s_of->add_option("--m", of.m)->required();
  s_of->add_option("--p", of.p)->required();
  s_of->add_option("--q", of.q)->required();
  s_of->add_option("--eps", of.eps);
  s_of->add_option("--eps-range", of.eps_range, "lo hi count (log spaced)")->expected(3);
  s_of->add_option("--A", of.A);
  s_of->add_option("--out-dir", of.out_dir);

  SweepArgs sw;
  auto* s_sw = app.add_subcommand("sweep", "Epsilon sweep and lifespan fit from a plan file");
  s_sw->add_option("--plan", sw.plan)->required();
  s_sw->add_option("--out-dir", sw.out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*s_ex) return cmd_exponents(ex, out);
    if (*s_rg) return cmd_region(rg, out);
    if (*s_rh) return cmd_rho(rh, out);
    if (*s_bs) return cmd_bessel(bs, out);
    if (*s_ph) return cmd_phi(ph, out);
    if (*s_sv) return cmd_solve(sv, out);
    if (*s_l31) return cmd_lemma31(l31, out, err);
    if (*s_lm) return cmd_lemmas(lm, out);
    if (*s_oh) return cmd_ode_h(oh, out);
    if (*s_of) return cmd_ode_f(of, out);
    if (*s_sw) return cmd_sweep(sw, out);
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace tricomi::cli
