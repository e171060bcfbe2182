#include "tricomi/exponents.hpp"

#include <cmath>
#include <string>

#include "tricomi/error.hpp"

namespace tricomi {

std::string_view to_string(NonlinearityMode mode) {
  switch (mode) {
    case NonlinearityMode::mixed: return "mixed";
    case NonlinearityMode::derivative_only: return "derivative_only";
    case NonlinearityMode::power_only: return "power_only";
    case NonlinearityMode::linear: return "linear";
  }
  return "mixed";
}

NonlinearityMode parse_mode(std::string_view text) {
  if (text == "mixed") return NonlinearityMode::mixed;
  if (text == "derivative_only" || text == "derivative") return NonlinearityMode::derivative_only;
  if (text == "power_only" || text == "power") return NonlinearityMode::power_only;
  if (text == "linear") return NonlinearityMode::linear;
  throw ValidationError("unknown nonlinearity mode '" + std::string(text) +
                        "' (expected mixed, derivative_only, power_only or linear)");
}

NonlinearWeights weights(NonlinearityMode mode) {
  switch (mode) {
    case NonlinearityMode::mixed: return {1.0, 1.0};
    case NonlinearityMode::derivative_only: return {1.0, 0.0};
    case NonlinearityMode::power_only: return {0.0, 1.0};
    case NonlinearityMode::linear: return {0.0, 0.0};
  }
  return {1.0, 1.0};
}

void ModelParams::validate() const {
  if (!(m >= 0.0) || !std::isfinite(m)) throw ValidationError("m must be >= 0");
  if (N < 1) throw ValidationError("N must be >= 1");
  if (!(p > 1.0)) throw ValidationError("p must be > 1");
  if (!(q > 1.0)) throw ValidationError("q must be > 1");
  if (N >= 3) {
    const double bound = 2.0 * N / (N - 2.0);
    if (q > bound) {
      throw ValidationError("standing assumption violated: q <= 2N/(N-2) = " +
                            std::to_string(bound) + " for N >= 3 (got q = " + std::to_string(q) +
                            ")");
    }
  }
}

}  // namespace tricomi

namespace tricomi::exponents {

namespace {

// Greatest root of a q^2 + b q + c with a > 0, cancellation-free.
double greatest_root(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) throw DomainError("quadratic has no real root");
  const double s = std::sqrt(disc);
  const double big = (-b - std::copysign(s, b)) / (2.0 * a);
  if (big == 0.0) return 0.0;
  const double other = c / (a * big);
  return std::max(big, other);
}

void require_n2(int N, const char* what) {
  if (N < 2) throw DomainError(std::string(what) + ": requires N >= 2");
}

// (m+1)(N-1) - m, the effective dimension in the derivative-nonlinearity exponents
double effective_dim(int N, double m) { return (m + 1.0) * (N - 1.0) - m; }

bool near(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); }

}  // namespace

double strauss_exponent(int N) {
  require_n2(N, "strauss_exponent");
  return greatest_root(N - 1.0, -(N + 1.0), -2.0);
}

double glassey_exponent(int N) {
  require_n2(N, "glassey_exponent");
  return 1.0 + 2.0 / (N - 1.0);
}

double tricomi_quadratic(int N, double m, double q) {
  return ((m + 1.0) * N - 1.0) * q * q - ((m + 1.0) * N + 1.0 - 2.0 * m) * q - 2.0 * (m + 1.0);
}

double tricomi_q_crit(int N, double m) {
  if (N < 1 || !(m >= 0.0)) throw DomainError("tricomi_q_crit: need N >= 1, m >= 0");
  const double a = (m + 1.0) * N - 1.0;
  if (!(a > 0.0)) throw DomainError("tricomi_q_crit: degenerate leading coefficient");
  return greatest_root(a, -((m + 1.0) * N + 1.0 - 2.0 * m), -2.0 * (m + 1.0));
}

double tricomi_p_crit(int N, double m) {
  if (N < 1 || !(m >= 0.0)) throw DomainError("tricomi_p_crit: need N >= 1, m >= 0");
  const double d = effective_dim(N, m);
  if (!(d > 0.0)) throw DomainError("tricomi_p_crit: degenerate denominator (m+1)(N-1) - m <= 0");
  return 1.0 + 2.0 / d;
}

double lambda_mixed(double p, double q, int N, double m) {
  return (q - 1.0) * ((m + 1.0) * (N - 1.0) * p - m * (p - 2.0) - 2.0);
}

ExponentSet exponent_set(int N, double m, std::optional<double> p, std::optional<double> q) {
  ExponentSet s;
  if (N >= 2) {
    s.q_strauss = strauss_exponent(N);
    s.p_glassey = glassey_exponent(N);
  }
  if ((m + 1.0) * N - 1.0 > 0.0) s.q_crit_tricomi = tricomi_q_crit(N, m);
  if (effective_dim(N, m) > 0.0) s.p_crit_tricomi = tricomi_p_crit(N, m);
  if (p && q) s.lambda_mixed = lambda_mixed(*p, *q, N, m);
  return s;
}

std::string_view to_string(LawKind kind) {
  return kind == LawKind::power ? "power" : "exponential";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::blowup_mixed_thm21: return "blowup_mixed_thm21";
    case Verdict::blowup_derivative_subcritical: return "blowup_derivative_subcritical";
    case Verdict::blowup_power_subcritical: return "blowup_power_subcritical";
    case Verdict::unknown_possibly_global: return "unknown_possibly_global";
  }
  return "unknown_possibly_global";
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::blowup_mixed_thm21: return 1;
    case Verdict::blowup_derivative_subcritical: return 2;
    case Verdict::blowup_power_subcritical: return 3;
    case Verdict::unknown_possibly_global: return 0;
  }
  return 0;
}

std::optional<LifespanLaw> derivative_law(int N, double m, double p) {
  const double d = effective_dim(N, m);
  if (!(d > 0.0)) {
    // every p > 1 is subcritical when the effective dimension degenerates
    const double denom = 2.0 - d * (p - 1.0);
    return LifespanLaw{LawKind::power, 2.0 * (p - 1.0) / denom};
  }
  const double p_tr = tricomi_p_crit(N, m);
  if (near(p, p_tr)) return LifespanLaw{LawKind::exponential, p - 1.0};
  if (p < p_tr) {
    return LifespanLaw{LawKind::power, 2.0 * (p - 1.0) / (2.0 - d * (p - 1.0))};
  }
  return std::nullopt;
}

RegionVerdict classify(const ModelParams& params) {
  params.validate();
  const auto [a, b] = weights(params.mode);
  const int N = params.N;
  const double m = params.m;
  const double p = params.p;
  const double q = params.q;
  RegionVerdict out;

  const bool has_p_tr = effective_dim(N, m) > 0.0;
  const bool has_q_c = (m + 1.0) * N - 1.0 > 0.0;
  const double p_tr = has_p_tr ? tricomi_p_crit(N, m) : std::numeric_limits<double>::infinity();
  const double q_c = has_q_c ? tricomi_q_crit(N, m) : std::numeric_limits<double>::infinity();

  if (a != 0.0 && b != 0.0) {
    const double lam = lambda_mixed(p, q, N, m);
    const bool on_boundary = near(lam, 4.0) || near(p, p_tr) || near(q, q_c);
    if (lam < 4.0 && p > p_tr && q > q_c && !on_boundary) {
      out.verdict = Verdict::blowup_mixed_thm21;
      out.lifespan = LifespanLaw{LawKind::power, 2.0 * p * (q - 1.0) / (4.0 - lam)};
      return out;
    }
    out.boundary = on_boundary;
  }
  if (a != 0.0 && (p < p_tr || near(p, p_tr))) {
    out.verdict = Verdict::blowup_derivative_subcritical;
    out.lifespan = derivative_law(N, m, p);
    return out;
  }
  if (b != 0.0 && (q < q_c || near(q, q_c))) {
    out.verdict = Verdict::blowup_power_subcritical;
    return out;
  }
  out.verdict = Verdict::unknown_possibly_global;
  return out;
}

LifespanLaw lifespan_prediction(const ModelParams& params) {
  const RegionVerdict v = classify(params);
  const auto [a, b] = weights(params.mode);
  if (a != 0.0 && b != 0.0 && v.verdict != Verdict::unknown_possibly_global) {
    // any mixed blow-up point with Lambda < 4 gets the mixed-term law
    const double lam = lambda_mixed(params.p, params.q, params.N, params.m);
    if (lam < 4.0) return LifespanLaw{LawKind::power, 2.0 * params.p * (params.q - 1.0) / (4.0 - lam)};
  }
  if (!v.lifespan) {
    throw DomainError(std::string("no lifespan law for verdict ") + std::string(to_string(v.verdict)));
  }
  return *v.lifespan;
}

}  // namespace tricomi::exponents
