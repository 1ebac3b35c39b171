#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <concepts>
#include <functional>

namespace becwh {

struct NewtonOptions {
  double tolerance = 1e-12;      // on max |residual|
  double fd_relative_step = 1e-7;
  int max_iterations = 50;
  int max_backtracks = 30;
};

template <int N>
struct NewtonResult {
  Eigen::Matrix<double, N, 1> x;
  Eigen::Matrix<double, N, 1> residual;
  int iterations = 0;
  bool converged = false;
};

/// Centered finite-difference Jacobian with per-component step
/// h_j = rel * max(|x_j|, 1e-300).
template <int N, class F>
Eigen::Matrix<double, N, N> fd_jacobian(F& f, const Eigen::Matrix<double, N, 1>& x,
                                        double rel_step) {
  Eigen::Matrix<double, N, N> jac;
  for (int j = 0; j < N; ++j) {
    const double h = rel_step * std::max(std::abs(x(j)), 1e-300);
    Eigen::Matrix<double, N, 1> plus = x, minus = x;
    plus(j) += h;
    minus(j) -= h;
    jac.col(j) = (f(plus) - f(minus)) / (plus(j) - minus(j));
  }
  return jac;
}

/// Damped Newton iteration for f(x) = 0 in N unknowns.
///
/// `admissible(x)` restricts the search to the domain where f is defined;
/// a trial step is halved until it lands inside the domain and decreases
/// |f|^2 (Armijo-free backtracking). Non-convergence is reported through the
/// result, not thrown.
template <int N, class F, class Admissible>
  requires std::predicate<Admissible&, const Eigen::Matrix<double, N, 1>&>
NewtonResult<N> solve_newton(F&& f, Eigen::Matrix<double, N, 1> x,
                             Admissible&& admissible,
                             const NewtonOptions& opts = {}) {
  using Vec = Eigen::Matrix<double, N, 1>;
  NewtonResult<N> out;
  Vec fx = f(x);
  for (int it = 0;; ++it) {
    out.iterations = it;
    if (fx.template lpNorm<Eigen::Infinity>() < opts.tolerance) {
      out.converged = true;
      break;
    }
    if (it == opts.max_iterations || !fx.allFinite()) break;

    const auto jac = fd_jacobian<N>(f, x, opts.fd_relative_step);
    const Vec step = jac.colPivHouseholderQr().solve(-fx);
    if (!step.allFinite()) break;

    const double norm0 = fx.squaredNorm();
    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k <= opts.max_backtracks; ++k, lambda *= 0.5) {
      const Vec trial = x + lambda * step;
      if (!admissible(trial)) continue;
      const Vec ft = f(trial);
      if (ft.allFinite() && ft.squaredNorm() < norm0) {
        x = trial;
        fx = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.x = x;
  out.residual = fx;
  return out;
}

template <int N, class F>
NewtonResult<N> solve_newton(F&& f, const Eigen::Matrix<double, N, 1>& x0,
                             const NewtonOptions& opts = {}) {
  return solve_newton<N>(std::forward<F>(f), x0,
                         [](const Eigen::Matrix<double, N, 1>&) { return true; },
                         opts);
}

}  // namespace becwh
