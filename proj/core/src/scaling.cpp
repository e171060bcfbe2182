#include "tricomi/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tricomi/error.hpp"

namespace tricomi {
namespace {
// log-T residuals below this are treated as exact
constexpr double kResidualFloor = 1e-6;
}  // namespace

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw ValidationError("least_squares: need >= 2 paired points");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("least_squares: abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ssr += r * r;
  }
  f.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  f.sigma = n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2)) : 0.0;
  return f;
}

double quadratic_curvature(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 3 || y.size() != n) throw ValidationError("quadratic_curvature: need >= 3 points");
  // normal equations on centred abscissae
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double s[5] = {0, 0, 0, 0, 0};
  double b[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - mx;
    double pw = 1.0;
    for (int k = 0; k < 5; ++k) {
      s[k] += pw;
      if (k < 3) b[k] += pw * y[i];
      pw *= d;
    }
  }
  double a[3][4] = {{s[0], s[1], s[2], b[0]}, {s[1], s[2], s[3], b[1]}, {s[2], s[3], s[4], b[2]}};
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    if (a[c][c] == 0.0) throw ValidationError("quadratic_curvature: degenerate abscissae");
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return a[2][3] / a[2][2];
}

ScalingFit fit_scaling(std::span<const double> eps, std::span<const double> T,
                       std::span<const double> T_width, exponents::LawKind kind, double p,
                       double theoretical) {
  if (eps.size() != T.size()) throw ValidationError("fit_scaling: eps and T differ in length");
  ScalingFit fit;
  fit.kind = kind;
  fit.theoretical = theoretical;
  fit.eps.assign(eps.begin(), eps.end());
  fit.T.assign(T.begin(), T.end());
  if (T_width.size() == T.size())
    fit.T_width.assign(T_width.begin(), T_width.end());
  else
    fit.T_width.assign(T.size(), 0.0);

  std::vector<std::size_t> order(eps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return eps[i] < eps[j]; });

  std::vector<double> x, y, used;
  for (std::size_t i : order) {
    if (!(T[i] > 0.0) || !std::isfinite(T[i])) {
      fit.excluded_eps.push_back(eps[i]);
      continue;
    }
    x.push_back(kind == exponents::LawKind::power ? std::log(eps[i]) : std::pow(eps[i], 1.0 - p));
    y.push_back(std::log(T[i]));
    used.push_back(eps[i]);
  }
  if (!fit.excluded_eps.empty()) {
    fit.partial = true;
    fit.warnings.push_back("runs without a finite blow-up time were left out of the fit");
  }
  if (x.size() < 3) {
    fit.partial = true;
    fit.warnings.push_back("fewer than three usable points");
    return fit;
  }
  if (x.size() >= 4) {
    // largest eps is the last sorted point
    const std::size_t n = x.size() - 1;
    const LineFit rest = least_squares(std::span(x).first(n), std::span(y).first(n));
    const double resid = y[n] - (rest.intercept + rest.slope * x[n]);
    if (std::abs(resid) > std::max(3.0 * rest.sigma, kResidualFloor)) {
      fit.excluded_eps.push_back(used.back());
      fit.warnings.push_back("largest eps excluded: residual beyond 3 sigma");
      x.pop_back();
      y.pop_back();
    }
  }
  const LineFit lf = least_squares(x, y);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  fit.curvature = quadratic_curvature(x, y);
  return fit;
}

}  // namespace tricomi
