#include "becwh/gp3d.hpp"

#include <algorithm>
#include <string>

namespace becwh {

double lorentz_gamma(double v_inf, double c_ref) {
  if (!(v_inf >= 0.0) || !(v_inf < c_ref)) {
    throw DomainError("Lorentz factor needs 0 <= v_inf < c_ref (v_inf = " +
                      std::to_string(v_inf) + ", c_ref = " + std::to_string(c_ref) + ")");
  }
  const double beta = v_inf / c_ref;
  return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

ObserverSpec::ObserverSpec(double v, double c_ref) : v_inf(v), reference_speed(c_ref) {
  if (!(v > 0.0) || !(v < c_ref)) {
    throw DomainError("observer: need 0 < v_inf < reference speed");
  }
}

double radial_geodesic_velocity(double r, double energy, double b0) {
  if (!(energy >= 1.0)) throw DomainError("radial geodesic: energy per unit mass must be >= 1");
  if (!(r >= b0)) throw DomainError("radial geodesic: r inside the throat");
  return -std::sqrt(detail::ellis_factor(r, b0) * (energy - 1.0) * (energy + 1.0));
}

double gp_time_offset(double r, double energy, double b0, const QuadratureOptions& opts) {
  if (!(energy > 1.0)) throw DomainError("GP time offset: energy must exceed 1");
  if (!(b0 > 0.0)) throw DomainError("GP time offset: b0 must be positive");
  if (!(r >= b0)) throw DomainError("GP time offset: r inside the throat");
  if (r == b0) return 0.0;
  const double e2m1 = (energy - 1.0) * (energy + 1.0);
  // r = b0 + u²: integrand 2u sqrt(e2m1) r / sqrt((r - b0)(r + b0)) = 2 sqrt(e2m1) r / sqrt(r + b0)
  auto integrand = [e2m1, b0](double u) {
    const double rr = b0 + u * u;
    return 2.0 * std::sqrt(e2m1) * rr / std::sqrt(rr + b0);
  };
  return integrate(integrand, 0.0, std::sqrt(r - b0), opts).value;
}

double metric_congruence_check(double r, double gamma, double c_ref, double b0) {
  const auto gp = gp_metric(r, gamma, c_ref, b0);
  const auto jac = gp_jacobian(r, gamma, c_ref, b0);
  const Eigen::Matrix2d pulled = jac.transpose() * gp.tr * jac;
  const auto target = wormhole_metric(r, c_ref, b0).tr;
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double scale = std::sqrt(std::abs(target(i, i) * target(j, j)));
      worst = std::max(worst, std::abs(pulled(i, j) - target(i, j)) / scale);
    }
  }
  return worst;
}

Eigen::Vector2d matching_residuals(double r, double cs0, double v_r, double v_inf, double b0,
                                   double c) {
  if (!(cs0 > v_inf)) throw DomainError("matching residuals: need c_s0 > v_inf (gamma_s real)");
  if (!(r > b0)) throw DomainError("matching residuals: r must lie outside the throat");
  const double f = detail::ellis_factor(r, b0);
  const double gamma = lorentz_gamma(v_inf, cs0);
  const double g2 = gamma * gamma;
  const double lhs1 = std::sqrt((g2 - 1.0) / f) / gamma;
  const double rhs1 = v_r * (gamma / cs0 - cs0 / (gamma * c * c));
  const double lhs2 = 1.0 / (g2 * f);
  const double ratio = cs0 / (c * gamma);
  const double rhs2 = 1.0 + (1.0 - ratio * ratio) * (v_r / c) * (v_r / c);
  return {lhs1 - rhs1, lhs2 - rhs2};
}

MatchingPoint zero_order_solution(double r, double v_inf, double b0) {
  if (!(r >= b0)) throw DomainError("zero-order solution: r inside the throat");
  return {v_inf * (r / b0), v_inf};
}

std::vector<double> RadialGrid::points() const {
  if (!(step > 0.0) || !(r_max >= r_min) || !std::isfinite(r_min) || !std::isfinite(r_max)) {
    throw DomainError("empty radial grid: need step > 0 and r_max >= r_min");
  }
  const auto count = static_cast<std::size_t>(std::floor((r_max - r_min) / step + 1e-9)) + 1;
  std::vector<double> rs(count);
  for (std::size_t i = 0; i < count; ++i) rs[i] = r_min + static_cast<double>(i) * step;
  return rs;
}

PointSolution solve_matching_point(double r, double v_inf, double b0, double c,
                                   MatchingPoint seed, const NewtonOptions& opts) {
  if (!(seed.cs0 > v_inf)) throw DomainError("matching seed must have c_s0 > v_inf");
  const auto to_cs0 = [v_inf](double gamma) {
    return v_inf * gamma / std::sqrt((gamma - 1.0) * (gamma + 1.0));
  };
  const auto system = [&](const Eigen::Vector2d& unknowns) -> Eigen::Vector2d {
    return matching_residuals(r, to_cs0(unknowns(0)), unknowns(1) * v_inf, v_inf, b0, c);
  };
  const auto admissible = [](const Eigen::Vector2d& unknowns) { return unknowns(0) > 1.0; };

  const Eigen::Vector2d x0(lorentz_gamma(v_inf, seed.cs0), seed.v_r / v_inf);
  const auto result = solve_newton<2>(system, x0, admissible, opts);

  PointSolution out;
  out.value = {to_cs0(result.x(0)), result.x(1) * v_inf};
  out.residual = result.residual;
  out.iterations = result.iterations;
  out.converged = result.converged && out.value.cs0 > v_inf;
  return out;
}

std::size_t GpSolution::converged_count() const {
  return static_cast<std::size_t>(std::count(converged.begin(), converged.end(), true));
}

double GpSolution::max_zero_order_deviation(double v_inf, double b0) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!converged[i]) continue;
    const auto zero = zero_order_solution(radii[i], v_inf, b0);
    worst = std::max(worst, std::abs(cs0[i] - zero.cs0) / zero.cs0);
    worst = std::max(worst, std::abs(vr[i] - zero.v_r) / zero.v_r);
  }
  return worst;
}

GpSolution solve_matching(double v_inf, double b0, const RadialGrid& grid, double c,
                          const MatchingOptions& opts) {
  if (!(v_inf > 0.0)) throw DomainError("solve_matching: v_inf must be positive");
  if (!(b0 > 0.0)) throw DomainError("solve_matching: b0 must be positive");
  if (!(v_inf < c)) throw DomainError("solve_matching: v_inf must be below c");
  const double r_floor = b0 * (1.0 + opts.throat_epsilon);
  if (grid.r_min < r_floor) {
    throw DomainError("solve_matching: grid starts at r = " + std::to_string(grid.r_min) +
                      ", inside the throat margin b0 (1 + eps) = " + std::to_string(r_floor));
  }

  GpSolution sol;
  for (double r : grid.points()) {
    const auto point = solve_matching_point(r, v_inf, b0, c, zero_order_solution(r, v_inf, b0),
                                            opts.newton);
    sol.radii.push_back(r);
    sol.cs0.push_back(point.value.cs0);
    sol.vr.push_back(point.value.v_r);
    sol.residual1.push_back(point.residual(0));
    sol.residual2.push_back(point.residual(1));
    sol.iterations.push_back(point.iterations);
    sol.converged.push_back(point.converged);
  }
  if (sol.converged_count() == 0) {
    throw NumericError("solve_matching: no grid point converged", 0.0, 0.0,
                       static_cast<int>(sol.size()));
  }
  return sol;
}

}  // namespace becwh
