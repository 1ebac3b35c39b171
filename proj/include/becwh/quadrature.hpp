#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "becwh/errors.hpp"

namespace becwh {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_intervals = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes on [-1, 1] (non-negative half).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = kKronrodWeights[7] * f(center);
  double gauss = kGaussWeights[3] * f(center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of f over [a, b]. The panel
/// with the largest error estimate is bisected until the summed error is
/// below max(abs_tol, rel_tol * |I|). The integrand must be finite on the
/// closed interval; remove endpoint singularities by substitution first.
template <class F>
QuadratureResult integrate(F&& f, double a, double b,
                           const QuadratureOptions& opts = {}) {
  if (a == b) return {};
  std::priority_queue<detail::Panel> panels;
  auto first = detail::gauss_kronrod_15(f, a, b);
  double total = first.value;
  double error = first.error;
  int evaluations = 15;
  panels.push(first);
  while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (static_cast<int>(panels.size()) >= opts.max_intervals) {
      throw NumericError("adaptive quadrature did not converge within " +
                             std::to_string(opts.max_intervals) + " panels",
                         total, error, evaluations);
    }
    const auto worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    total += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  if (!std::isfinite(total)) {
    throw NumericError("quadrature produced a non-finite value", total, error,
                       evaluations);
  }
  return {total, error, evaluations};
}

}  // namespace becwh
