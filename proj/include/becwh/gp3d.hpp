#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "becwh/constants.hpp"
#include "becwh/errors.hpp"
#include "becwh/newton.hpp"
#include "becwh/quadrature.hpp"

// Radial infall in generalized Gullstrand-Painlevé coordinates for the Ellis
// wormhole b(r) = b0^2/r, and the matching of that line element to the
// acoustic metric of a radially flowing condensate.
//
// Radii and b0 share one unit (only r/b0 enters); speeds are in m/s.

namespace becwh {

/// 1/sqrt(1 - (v/c)^2). Throws for v >= c or v < 0.
double lorentz_gamma(double v_inf, double c_ref);

/// Observer that starts at infinity with speed v_inf, measured against
/// `reference_speed` (c in real mode, c_s0 in acoustic mode).
struct ObserverSpec {
  double v_inf = 0.0;
  double reference_speed = kSpeedOfLight;

  ObserverSpec() = default;
  ObserverSpec(double v, double c_ref);
  double gamma() const { return lorentz_gamma(v_inf, reference_speed); }
};

/// dr/dτ of an ingoing radial timelike geodesic (c = 1, L = 0).
double radial_geodesic_velocity(double r, double energy, double b0);

/// ∫_{b0}^{r} sqrt((E²-1)/(1-b0²/r'²)) dr', the r-dependent part of the GP
/// time t_r (c = 1); zero at the throat.
double gp_time_offset(double r, double energy, double b0, const QuadratureOptions& opts = {});

/// t–r block of a static spherically symmetric line element plus the areal
/// radius; g_θθ = r², g_φφ = r² sin²θ.
template <typename Scalar>
struct MetricAtPoint {
  Scalar r;
  Eigen::Matrix<Scalar, 2, 2> tr;

  Scalar g_tt() const { return tr(0, 0); }
  Scalar g_tr() const { return tr(0, 1); }
  Scalar g_rr() const { return tr(1, 1); }
  Scalar g_thth() const { return r * r; }

  bool lorentzian() const { return g_tt() < Scalar(0) && tr.determinant() < Scalar(0); }

  Eigen::Matrix<Scalar, 4, 4> full(Scalar theta) const {
    using std::sin;
    Eigen::Matrix<Scalar, 4, 4> g = Eigen::Matrix<Scalar, 4, 4>::Zero();
    g.template topLeftCorner<2, 2>() = tr;
    g(2, 2) = r * r;
    g(3, 3) = r * r * sin(theta) * sin(theta);
    return g;
  }
};

namespace detail {
template <typename Scalar>
Scalar ellis_factor(Scalar r, Scalar b0) {
  // 1 - b0²/r² = (r - b0)(r + b0)/r²
  return (r - b0) * (r + b0) / (r * r);
}
}  // namespace detail

/// Diagonal massless wormhole metric in (t, r): diag(-c², 1/(1 - b0²/r²)).
template <typename Scalar>
MetricAtPoint<Scalar> wormhole_metric(Scalar r, Scalar c_ref, Scalar b0) {
  if (!(r > b0)) throw PoleError("wormhole metric: g_rr singular at the throat", b0);
  MetricAtPoint<Scalar> m{r, Eigen::Matrix<Scalar, 2, 2>::Zero()};
  m.tr(0, 0) = -c_ref * c_ref;
  m.tr(1, 1) = Scalar(1) / detail::ellis_factor(r, b0);
  return m;
}

/// GP-like metric in (t_r, r). The off-diagonal entry is half the dt_r dr
/// coefficient of the line element. With gamma = 1 it is the diagonal
/// wormhole metric. Acoustic mode: c_ref = c_s0, gamma = γ_s.
template <typename Scalar>
MetricAtPoint<Scalar> gp_metric(Scalar r, Scalar gamma, Scalar c_ref, Scalar b0) {
  if (!(r > b0)) throw PoleError("GP metric: g_rr singular at the throat", b0);
  if (!(gamma >= Scalar(1))) throw DomainError("GP metric: gamma must be >= 1");
  using std::sqrt;
  const Scalar f = detail::ellis_factor(r, b0);
  const Scalar g2 = gamma * gamma;
  MetricAtPoint<Scalar> m{r, {}};
  m.tr(0, 0) = -c_ref * c_ref / g2;
  m.tr(0, 1) = m.tr(1, 0) = c_ref / g2 * sqrt((g2 - Scalar(1)) / f);
  m.tr(1, 1) = Scalar(1) / (g2 * f);
  return m;
}

/// ∂(t_r, r)/∂(t, r) for c t_r = γ c t + ∫ sqrt((γ²-1)/(1-b0²/r²)) dr.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> gp_jacobian(Scalar r, Scalar gamma, Scalar c_ref, Scalar b0) {
  using std::sqrt;
  const Scalar f = detail::ellis_factor(r, b0);
  Eigen::Matrix<Scalar, 2, 2> j;
  j << gamma, sqrt((gamma * gamma - Scalar(1)) / f) / c_ref, Scalar(0), Scalar(1);
  return j;
}

/// Pulls the GP metric back to (t, r) and returns the largest component
/// deviation from the diagonal wormhole metric, each entry normalised by
/// sqrt(|T_ii T_jj|) of the target T.
double metric_congruence_check(double r, double gamma, double c_ref, double b0);

/// Acoustic metric of a condensate flowing radially with v_r in flat space,
/// without the conformal factor ρc/c_s. Off-diagonal entry is half the
/// c dt dr coefficient rescaled to dt dr.
template <typename Scalar>
MetricAtPoint<Scalar> bec_metric(Scalar r, Scalar c_s, Scalar v_r, Scalar c) {
  const Scalar k = Scalar(1) - (c_s / c) * (c_s / c);
  MetricAtPoint<Scalar> m{r, {}};
  m.tr(0, 0) = -c_s * c_s;
  m.tr(0, 1) = m.tr(1, 0) = -k * v_r;
  m.tr(1, 1) = Scalar(1) + k * (v_r / c) * (v_r / c);
  return m;
}

/// The multiplicative factor ρ c / c_s dropped by bec_metric.
inline double bec_conformal_factor(double density, double c_s, double c) {
  return density * c / c_s;
}

/// LHS - RHS of the two component equations (cross term, radial term)
/// matching the acoustic GP line element to the condensate's.
Eigen::Vector2d matching_residuals(double r, double cs0, double v_r, double v_inf, double b0,
                                   double c = kSpeedOfLight);

struct MatchingPoint {
  double cs0;
  double v_r;
};

/// Leading-order solution: v_r = v_inf, c_s0 = v_inf r / b0.
MatchingPoint zero_order_solution(double r, double v_inf, double b0);

struct RadialGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  double step = 0.0;

  std::vector<double> points() const;
};

struct MatchingOptions {
  double throat_epsilon = 1e-3;  // grids must start at r >= b0 (1 + eps)
  NewtonOptions newton{};
};

struct PointSolution {
  MatchingPoint value{};
  Eigen::Vector2d residual = Eigen::Vector2d::Zero();
  int iterations = 0;
  bool converged = false;
};

/// Damped Newton solve at one radius in the unknowns (γ_s, v_r / v_inf),
/// with c_s0 = v_inf γ_s / sqrt(γ_s² - 1).
PointSolution solve_matching_point(double r, double v_inf, double b0, double c,
                                   MatchingPoint seed, const NewtonOptions& opts = {});

struct GpSolution {
  std::vector<double> radii;
  std::vector<double> cs0;
  std::vector<double> vr;
  std::vector<double> residual1;
  std::vector<double> residual2;
  std::vector<int> iterations;
  std::vector<bool> converged;

  std::size_t size() const { return radii.size(); }
  std::size_t converged_count() const;
  /// Max relative deviation of (cs0, vr) from the zero-order solution over
  /// converged points.
  double max_zero_order_deviation(double v_inf, double b0) const;
};

/// Solves the exact matching system on every grid radius, seeded by the
/// zero-order solution. Throws NumericError if no point converges.
GpSolution solve_matching(double v_inf, double b0, const RadialGrid& grid,
                          double c = kSpeedOfLight, const MatchingOptions& opts = {});

}  // namespace becwh
