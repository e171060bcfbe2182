#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace tricomi {

/// Which nonlinear terms are switched on: a |u_t|^p + b |u|^q.
enum class NonlinearityMode { mixed, derivative_only, power_only, linear };

std::string_view to_string(NonlinearityMode mode);
NonlinearityMode parse_mode(std::string_view text);

/// Coefficients (a, b) multiplying |u_t|^p and |u|^q.
struct NonlinearWeights {
  double a = 1.0;
  double b = 1.0;
};
NonlinearWeights weights(NonlinearityMode mode);

/// Parameters of u_tt - t^{2m} Lap u = a |u_t|^p + b |u|^q in R^N.
struct ModelParams {
  double m = 0.0;
  int N = 3;
  double p = 2.0;
  double q = 2.0;
  NonlinearityMode mode = NonlinearityMode::mixed;

  /// Throws ValidationError naming the first violated assumption
  /// (m >= 0, N >= 1, p > 1, q > 1, q <= 2N/(N-2) for N >= 3).
  void validate() const;
};

}  // namespace tricomi

namespace tricomi::exponents {

/// Positive root of (N-1) q^2 - (N+1) q - 2; N >= 2.
double strauss_exponent(int N);
/// 1 + 2/(N-1); N >= 2.
double glassey_exponent(int N);
/// Greatest root of ((m+1)N - 1) q^2 - ((m+1)N + 1 - 2m) q - 2(m+1).
double tricomi_q_crit(int N, double m);
/// The quadratic whose greatest root is tricomi_q_crit, evaluated at q.
double tricomi_quadratic(int N, double m, double q);
/// 1 + 2/((m+1)(N-1) - m).
double tricomi_p_crit(int N, double m);
/// (q-1) [(m+1)(N-1) p - m (p-2) - 2].
double lambda_mixed(double p, double q, int N, double m);

struct ExponentSet {
  std::optional<double> q_strauss;   // N >= 2 only
  std::optional<double> p_glassey;   // N >= 2 only
  std::optional<double> q_crit_tricomi;
  std::optional<double> p_crit_tricomi;
  std::optional<double> lambda_mixed;  // needs (p, q)
};

ExponentSet exponent_set(int N, double m, std::optional<double> p = {},
                         std::optional<double> q = {});

enum class LawKind { power, exponential };
std::string_view to_string(LawKind kind);

/// power: T <= C eps^{-exponent};  exponential: T <= exp(C eps^{-exponent}).
struct LifespanLaw {
  LawKind kind = LawKind::power;
  double exponent = 0.0;
};

enum class Verdict {
  blowup_mixed_thm21,
  blowup_derivative_subcritical,
  blowup_power_subcritical,
  unknown_possibly_global
};
std::string_view to_string(Verdict v);
/// Stable small integer used in region-map CSV output.
int verdict_code(Verdict v);

struct RegionVerdict {
  Verdict verdict = Verdict::unknown_possibly_global;
  std::optional<LifespanLaw> lifespan;
  /// Set when the point lies on Lambda = 4, p = p_tr or q = q_C in mixed mode.
  bool boundary = false;
};

/// Derivative-only lifespan law for p <= p_tr: power with exponent
/// 2(p-1) / (2 - ((m+1)(N-1) - m)(p-1)) below p_tr, exponential with p - 1 at p_tr.
std::optional<LifespanLaw> derivative_law(int N, double m, double p);

RegionVerdict classify(const ModelParams& params);

/// Law attached to the verdict, except that a mixed-mode blow-up point with Lambda < 4 gets
/// the power law 2p(q-1)/(4 - Lambda). Throws DomainError when there is no law.
LifespanLaw lifespan_prediction(const ModelParams& params);

}  // namespace tricomi::exponents
