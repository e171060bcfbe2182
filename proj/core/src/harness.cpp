#include "tricomi/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "tricomi/error.hpp"
#include "tricomi/oracle.hpp"

namespace tricomi::harness {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Theory {
  exponents::LawKind kind = exponents::LawKind::power;
  double exponent = kNaN;
};

Theory theory_for(const SweepPlan& plan) {
  const ModelParams& mp = plan.base.params;
  if (plan.target == Target::ode_h) {
    const auto law = oracle::h_ode_scaling_exponent(mp.N, mp.m, mp.p);
    return {law.kind, law.exponent};
  }
  const auto w = weights(mp.mode);
  if (w.a != 0.0 && w.b != 0.0) {
    const double lam = exponents::lambda_mixed(mp.p, mp.q, mp.N, mp.m);
    if (lam < 4.0) return {exponents::LawKind::power, 2.0 * mp.p * (mp.q - 1.0) / (4.0 - lam)};
  }
  const auto v = exponents::classify(mp);
  if (v.lifespan) return {v.lifespan->kind, v.lifespan->exponent};
  return {};
}

SweepRow run_one(const SweepPlan& plan, double eps) {
  SweepRow row;
  row.eps = eps;
  solver::BlowupReport rep;
  const ModelParams& mp = plan.base.params;
  switch (plan.target) {
    case Target::pde: {
      solver::SolverConfig cfg = plan.base;
      cfg.epsilon = eps;
      cfg.snapshot_every = 0.0;
      rep = solver::run(cfg, {});
      break;
    }
    case Target::ode_f:
      rep = oracle::f_ode_integrate(oracle::FOdeSpec::from_model(mp.N, mp.m, mp.p, mp.q, eps, plan.A));
      break;
    case Target::ode_h: {
      const double T = oracle::h_ode_blowup_time(
          oracle::HOdeSpec::from_model(mp.N, mp.m, mp.p, plan.C, plan.H0_scale * eps, plan.T3));
      rep.outcome = std::isfinite(T) ? solver::Outcome::blew_up : solver::Outcome::reached_t_max;
      rep.trigger = std::isfinite(T) ? solver::Trigger::u_overflow : solver::Trigger::none;
      rep.t_lower = rep.t_upper = T;
      break;
    }
  }
  row.T_lower = rep.t_lower;
  row.T_upper = rep.t_upper;
  row.outcome = rep.outcome;
  row.trigger = rep.trigger;
  return row;
}

void write_file(const std::filesystem::path& path, const auto& writer) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw NumericalError("cannot write " + path.string());
  writer(f);
  std::fclose(f);
}

}  // namespace

std::string_view to_string(Target t) {
  switch (t) {
    case Target::pde: return "pde";
    case Target::ode_f: return "ode_f";
    case Target::ode_h: return "ode_h";
  }
  return "?";
}

Target parse_target(std::string_view text) {
  if (text == "pde") return Target::pde;
  if (text == "ode_f") return Target::ode_f;
  if (text == "ode_h") return Target::ode_h;
  throw ValidationError("unknown sweep target '" + std::string(text) + "'");
}

void SweepPlan::validate() const {
  if (eps_values.empty()) throw ValidationError("sweep: eps_values is empty");
  std::set<double> seen;
  for (double e : eps_values) {
    if (!(e > 0.0) || !std::isfinite(e)) throw ValidationError("sweep: eps values must be > 0");
    if (!seen.insert(e).second) throw ValidationError("sweep: eps values must be distinct");
  }
  if (target == Target::pde)
    base.validate();
  else
    base.params.validate();
}

int worker_count(int requested) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("TRICOMI_LAB_THREADS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(n, 1);
}

SweepResult sweep(const SweepPlan& plan) {
  plan.validate();
  const Theory th = theory_for(plan);
  const std::size_t runs = plan.eps_values.size();
  SweepResult out;
  out.rows.resize(runs);
  std::vector<std::exception_ptr> errors(runs);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < runs; i = next++) {
      try {
        out.rows[i] = run_one(plan, plan.eps_values[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::min<int>(worker_count(plan.threads), static_cast<int>(runs));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<double> eps, T, width;
  for (const auto& r : out.rows) {
    eps.push_back(r.eps);
    T.push_back(r.outcome == solver::Outcome::blew_up ? r.T_mid()
                                                       : std::numeric_limits<double>::infinity());
    width.push_back(r.T_upper - r.T_lower);
  }
  out.fit = fit_scaling(eps, T, width, th.kind, plan.base.params.p, th.exponent);
  if (std::isnan(th.exponent)) out.fit.warnings.push_back("no theoretical law for these parameters");

  if (!plan.output_dir.empty()) {
    const std::filesystem::path dir(plan.output_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "sweep.csv", [&](std::FILE* f) { write_sweep_csv(f, out); });
    if (plan.svg) {
      write_file(dir / "sweep.svg", [&](std::FILE* f) { std::fputs(sweep_svg(out).c_str(), f); });
    }
  }
  return out;
}

std::vector<RegionCell> region_map(int N, double m, double p_lo, double p_hi, double q_lo,
                                   double q_hi, int resolution, NonlinearityMode mode) {
  if (resolution < 2) throw ValidationError("region_map: resolution must be >= 2");
  if (!(p_lo > 1.0) || !(p_hi > p_lo) || !(q_lo > 1.0) || !(q_hi > q_lo))
    throw ValidationError("region_map: need 1 < p_lo < p_hi and 1 < q_lo < q_hi");
  std::vector<RegionCell> cells;
  cells.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int j = 0; j < resolution; ++j) {
    const double q = q_lo + (q_hi - q_lo) * j / (resolution - 1);
    for (int i = 0; i < resolution; ++i) {
      const double p = p_lo + (p_hi - p_lo) * i / (resolution - 1);
      RegionCell c;
      c.p = p;
      c.q = q;
      c.verdict = exponents::classify(ModelParams{m, N, p, q, mode});
      c.lambda = exponents::lambda_mixed(p, q, N, m);
      cells.push_back(c);
    }
  }
  return cells;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_sweep_csv(std::FILE* out, const SweepResult& result) {
  std::fputs("eps,T_lower,T_upper,T_mid,T_width,outcome\n", out);
  for (const auto& r : result.rows) {
    std::fprintf(out, "%s,%s,%s,%s,%s,%s\n", fmt(r.eps).c_str(), fmt(r.T_lower).c_str(),
                 fmt(r.T_upper).c_str(), fmt(r.T_mid()).c_str(), fmt(r.T_upper - r.T_lower).c_str(),
                 std::string(solver::to_string(r.outcome)).c_str());
  }
}

void write_region_csv(std::FILE* out, const std::vector<RegionCell>& cells) {
  std::fputs("p,q,lambda,verdict_code,verdict,boundary,law_kind,law_exponent\n", out);
  for (const auto& c : cells) {
    const auto& v = c.verdict;
    std::fprintf(out, "%s,%s,%s,%d,%s,%d,%s,%s\n", fmt(c.p).c_str(), fmt(c.q).c_str(),
                 fmt(c.lambda).c_str(), exponents::verdict_code(v.verdict),
                 std::string(exponents::to_string(v.verdict)).c_str(), v.boundary ? 1 : 0,
                 v.lifespan ? std::string(exponents::to_string(v.lifespan->kind)).c_str() : "none",
                 v.lifespan ? fmt(v.lifespan->exponent).c_str() : "nan");
  }
}

std::string sweep_svg(const SweepResult& result) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : result.rows) {
    if (r.outcome == solver::Outcome::blew_up && r.T_mid() > 0.0)
      pts.emplace_back(std::log10(r.eps), std::log10(r.T_mid()));
  }
  std::sort(pts.begin(), pts.end());
  constexpr double W = 480, H = 320, pad = 40;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"" << H - 8 << "\" text-anchor=\"middle\">log10 eps</text>\n";
  s << "<text x=\"12\" y=\"" << H / 2 << "\" transform=\"rotate(-90 12 " << H / 2
    << ")\" text-anchor=\"middle\">log10 T</text>\n";
  if (!pts.empty()) {
    double x0 = pts.front().first, x1 = pts.back().first;
    double y0 = pts.front().second, y1 = y0;
    for (auto [x, y] : pts) {
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    s << "<polyline fill=\"none\" stroke=\"black\" points=\"";
    for (auto [x, y] : pts) {
      s << fmt(pad + (x - x0) / (x1 - x0) * (W - 2 * pad)) << ','
        << fmt(H - pad - (y - y0) / (y1 - y0) * (H - 2 * pad)) << ' ';
    }
    s << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace tricomi::harness
