#include "tricomi/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "tricomi/error.hpp"

namespace tricomi::quad {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the embedded Gauss points.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

AdaptiveResult gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                             double rel_tol, double abs_tol, int max_intervals) {
  AdaptiveResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  heap.push(first);
  double value = first.value;
  double error = first.error;
  int count = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) && count < max_intervals) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;
    }
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // re-sum to shed the drift of incremental updates
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error = error;
  out.intervals = count;
  out.converged = error <= std::max(abs_tol, rel_tol * std::abs(value)) ||
                  error <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
  return out;
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_tol) {
  const AdaptiveResult r = gauss_kronrod(f, a, b, rel_tol, abs_tol);
  if (!r.converged) {
    throw NumericalError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                         std::to_string(b) + "]");
  }
  return r.value;
}

double simpson(std::span<const double> samples, double h) {
  const std::size_t n = samples.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (samples[0] + samples[1]);
  const std::size_t intervals = n - 1;
  std::size_t simpson_end = intervals;  // index of the last node covered by the 1/3 rule
  double tail = 0.0;
  if (intervals % 2 == 1) {
    if (intervals == 1) return 0.5 * h * (samples[0] + samples[1]);
    simpson_end = intervals - 3;
    const double* s = samples.data() + simpson_end;
    tail = 3.0 * h / 8.0 * (s[0] + 3.0 * s[1] + 3.0 * s[2] + s[3]);
  }
  double sum = 0.0;
  if (simpson_end > 0) {
    sum = samples[0] + samples[simpson_end];
    for (std::size_t i = 1; i < simpson_end; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * samples[i];
    sum *= h / 3.0;
  }
  return sum + tail;
}

std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("cumulative_trapezoid: size mismatch");
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  }
  return out;
}

}  // namespace tricomi::quad
