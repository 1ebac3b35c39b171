#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "becwh/errors.hpp"

namespace becwh {

/// Bisection on a bracket [lo, hi] with f(lo) f(hi) <= 0. Stops when the
/// bracket is narrower than abs_tol + rel_tol * |mid| or f(mid) == 0.
template <class F>
double bisect(F&& f, double lo, double hi, double abs_tol = 1e-13, double rel_tol = 1e-14,
              int max_iter = 200) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw NumericError("bisection: interval does not bracket a root", 0.5 * (lo + hi), hi - lo, 2);
  }
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo < abs_tol + rel_tol * std::abs(mid)) return mid;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Scans consecutive samples for sign changes of f and refines each one
/// by bisection. Returns the roots in increasing order.
template <class F>
std::vector<double> bracket_roots(F&& f, const std::vector<double>& samples) {
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double a = samples[i], b = samples[i + 1];
    const double fa = f(a), fb = f(b);
    if (fa == 0.0) {
      if (roots.empty() || roots.back() != a) roots.push_back(a);
      continue;
    }
    if (fb != 0.0 && std::signbit(fa) != std::signbit(fb)) roots.push_back(bisect(f, a, b));
  }
  if (!samples.empty() && f(samples.back()) == 0.0 &&
      (roots.empty() || roots.back() != samples.back())) {
    roots.push_back(samples.back());
  }
  return roots;
}

}  // namespace becwh
