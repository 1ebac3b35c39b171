#include "becwh/profile1d.hpp"

#include <cmath>
#include <limits>

#include "becwh/errors.hpp"

namespace becwh {

std::vector<double> Grid1D::points() const {
  if (!(step > 0.0) || !(x_max >= x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw DomainError("empty 1D grid: need step > 0 and x_max >= x_min");
  }
  const auto count = static_cast<std::size_t>(std::floor((x_max - x_min) / step + 1e-9)) + 1;
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) {
    double x = x_min + static_cast<double>(i) * step;
    if (std::abs(x) < 1e-9 * step) x = 0.0;
    xs[i] = x;
  }
  return xs;
}

double field_detuning_1d(const ShapeFunction& s, const FeshbachResonance& res, double r) {
  detail::require_outside_throat(s, r);
  return std::pow(r / s.b0, 1.0 - s.q) * res.width_G;
}

double field_profile_1d(const ShapeFunction& s, const FeshbachResonance& res, double r) {
  return field_detuning_1d(s, res, r) + res.B0_G;
}

double scattering_profile_1d(const ShapeFunction& s, double r) { return metric_factor(s, r); }

double lab_coordinate_1d(double r, double b0, Side side) {
  if (!(r >= b0)) throw DomainError("lab coordinate: r inside the throat");
  return sign_of(side) * (r - b0);
}

RadialPoint radius_from_lab_1d(double x, double b0) {
  return {std::abs(x) + b0, std::signbit(x) ? Side::Lower : Side::Upper};
}

double slope_metric(const ShapeFunction& s, const FeshbachResonance& res, double x) {
  const double scale = res.a_bg_m / (100.0 * kBohrRadius);
  const double r = std::abs(x) + s.b0;
  const double magnitude =
      scale * (1.0 - s.q) * std::pow(s.b0, 1.0 - s.q) * std::pow(r, s.q - 2.0);
  return x < 0.0 ? -magnitude : magnitude;
}

std::vector<ProfileSample1D> sample_profile_1d(const ShapeFunction& s,
                                               const CondensateSpec& spec,
                                               const Grid1D& grid) {
  const auto xs = grid.points();
  const double a_bg_over_100a0 = spec.resonance.a_bg_m / (100.0 * kBohrRadius);
  const double cs_bg = background_sound_speed(spec);

  std::vector<ProfileSample1D> out;
  out.reserve(xs.size());
  for (double x : xs) {
    ProfileSample1D p;
    p.x = x;
    p.r = radius_from_lab_1d(x, s.b0).r;
    p.a_over_abg = scattering_profile_1d(s, p.r);
    p.a_over_100a0 = p.a_over_abg * a_bg_over_100a0;
    const double detuning = field_detuning_1d(s, spec.resonance, p.r);
    p.B = detuning + spec.resonance.B0_G;
    // radicand of c_s(B) equals a/a_bg by construction
    const double radicand = 1.0 - spec.resonance.width_G / detuning;
    p.valid = radicand >= 0.0;
    p.cs = p.valid ? cs_bg * std::sqrt(radicand) : std::numeric_limits<double>::quiet_NaN();
    out.push_back(p);
  }
  return out;
}

Feasibility1D feasibility_1d(const ShapeFunction& s, const CondensateSpec& spec,
                             const Grid1D& grid, const FeasibilityOptions1D& opts) {
  Feasibility1D f;
  f.threshold = opts.threshold;
  f.reference_x = opts.reference_x;
  f.reference_slope = std::abs(slope_metric(s, spec.resonance, opts.reference_x));

  bool any = false;
  for (double x : grid.points()) {
    if (std::abs(x) < opts.throat_exclusion) continue;
    const double slope = std::abs(slope_metric(s, spec.resonance, x));
    if (!any || slope > f.max_slope) {
      f.max_slope = slope;
      f.slope_at = x;
      any = true;
    }
  }
  if (!any) throw DomainError("feasibility: throat exclusion window covers the whole grid");
  f.feasible = f.max_slope <= f.threshold;
  return f;
}

}  // namespace becwh
