#include "becwh/profile3d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "becwh/errors.hpp"
#include "becwh/roots.hpp"

namespace becwh {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// r²/b0² - 1 without cancellation near the throat.
double radial_excess(double r, double b0) { return (r - b0) * (r + b0) / (b0 * b0); }

void require_radius(double r, double b0) {
  if (!(b0 > 0.0)) throw DomainError("b0 must be positive");
  if (!(r >= b0)) throw DomainError("r inside the throat");
}

double velocity_ratio_sq(double v_inf, const CondensateSpec& spec) {
  const double ratio = v_inf / background_sound_speed(spec);
  return ratio * ratio;
}

// Linear interpolation of a converged GpSolution at r, if r is covered.
std::optional<MatchingPoint> interpolate(const GpSolution& sol, double r) {
  const auto& rs = sol.radii;
  if (rs.empty() || r < rs.front() || r > rs.back()) return std::nullopt;
  const auto hi = std::lower_bound(rs.begin(), rs.end(), r);
  const auto j = static_cast<std::size_t>(hi - rs.begin());
  if (rs[j] == r) {
    if (!sol.converged[j]) return std::nullopt;
    return MatchingPoint{sol.cs0[j], sol.vr[j]};
  }
  const std::size_t i = j - 1;
  if (!sol.converged[i] || !sol.converged[j]) return std::nullopt;
  const double t = (r - rs[i]) / (rs[j] - rs[i]);
  return MatchingPoint{sol.cs0[i] + t * (sol.cs0[j] - sol.cs0[i]),
                       sol.vr[i] + t * (sol.vr[j] - sol.vr[i])};
}

}  // namespace

void LabLayout::validate() const {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("lab layout: R must be positive");
  if (!(b0 > 0.0) || !std::isfinite(b0)) throw DomainError("lab layout: b0 must be positive");
}

SoundSpeeds3D sound_speed_profile_3d(double r, double v_inf, double b0) {
  require_radius(r, b0);
  return {v_inf * (r / b0), v_inf * std::sqrt(radial_excess(r, b0))};
}

double field_denominator_3d(double r, double v_inf, double b0, const CondensateSpec& spec) {
  require_radius(r, b0);
  return 1.0 - velocity_ratio_sq(v_inf, spec) * radial_excess(r, b0);
}

FieldValue3D field_profile_3d(double r, double v_inf, double b0, const CondensateSpec& spec,
                              double pole_delta) {
  const double d = field_denominator_3d(r, v_inf, b0, spec);
  if (d == 0.0) {
    throw PoleError("3D field profile: pole of B(r)", asymptote_radius(v_inf, b0, spec));
  }
  return {spec.resonance.width_G / d + spec.resonance.B0_G, d, std::abs(d) < pole_delta};
}

double scattering_profile_3d(double r, double v_inf, double b0, const CondensateSpec& spec) {
  require_radius(r, b0);
  return velocity_ratio_sq(v_inf, spec) * radial_excess(r, b0);
}

double asymptote_radius(double v_inf, double b0, const CondensateSpec& spec) {
  if (!(v_inf > 0.0)) throw DomainError("asymptote radius needs v_inf > 0");
  return b0 * std::sqrt(1.0 + 1.0 / velocity_ratio_sq(v_inf, spec));
}

std::vector<double> lab_grid_3d(const LabLayout& layout, double step) {
  layout.validate();
  if (!(step > 0.0)) throw DomainError("3D lab grid: step must be positive");
  const double extent = 2.0 * layout.R;
  const auto count = static_cast<std::size_t>(std::floor(extent / step + 1e-9)) + 1;
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) {
    double x = static_cast<double>(i) * step;
    if (std::abs(x - layout.R) < 1e-9 * step) x = layout.R;
    xs[i] = x;
  }
  return xs;
}

std::vector<ProfileSample3D> lab_profiles_3d(const LabLayout& layout, double v_inf,
                                             const CondensateSpec& spec, double step,
                                             const ProfileOptions3D& opts) {
  if (!(v_inf > 0.0)) throw DomainError("3D profile: v_inf must be positive");
  const double cs_bg = background_sound_speed(spec);
  const double ratio_sq = velocity_ratio_sq(v_inf, spec);
  const auto& res = spec.resonance;

  std::vector<ProfileSample3D> out;
  for (double x : lab_grid_3d(layout, step)) {
    ProfileSample3D p;
    p.x = x;
    p.r = layout.radius_at(x);
    std::optional<MatchingPoint> numeric;
    if (opts.solution != nullptr) numeric = interpolate(*opts.solution, p.r);

    double denominator;
    if (numeric) {
      p.cs0 = numeric->cs0;
      p.vr = numeric->v_r;
      p.cs = p.cs0 > v_inf ? p.cs0 * std::sqrt((1.0 - v_inf / p.cs0) * (1.0 + v_inf / p.cs0))
                           : 0.0;
      p.a_over_abg = (p.cs / cs_bg) * (p.cs / cs_bg);
      denominator = 1.0 - p.a_over_abg;
    } else {
      const auto speeds = sound_speed_profile_3d(p.r, v_inf, layout.b0);
      p.cs0 = speeds.cs0;
      p.cs = speeds.cs;
      p.vr = v_inf;
      p.a_over_abg = ratio_sq * radial_excess(p.r, layout.b0);
      denominator = 1.0 - p.a_over_abg;
    }
    p.near_asymptote = std::abs(denominator) < opts.pole_delta;
    p.B = p.near_asymptote ? kNaN : res.width_G / denominator + res.B0_G;
    p.valid = !p.near_asymptote && std::isfinite(p.cs);
    out.push_back(p);
  }
  return out;
}

std::vector<double> detect_asymptotes(const LabLayout& layout, double v_inf,
                                      const CondensateSpec& spec, double step) {
  const auto xs = lab_grid_3d(layout, step);
  const auto denominator = [&](double x) {
    return field_denominator_3d(layout.radius_at(x), v_inf, layout.b0, spec);
  };
  return bracket_roots(denominator, xs);
}

std::vector<double> analytic_asymptotes(const LabLayout& layout, double v_inf,
                                        const CondensateSpec& spec) {
  const double offset = asymptote_radius(v_inf, layout.b0, spec) - layout.b0;
  std::vector<double> xs;
  if (offset <= layout.R) {
    xs.push_back(layout.R - offset);
    xs.push_back(layout.R + offset);
  }
  return xs;
}

ResolutionReport resolution_audit(double cs0, const AtomSpecies& species, double step,
                                  double b0, const ResolutionOptions& opts) {
  if (!(step > 0.0)) throw DomainError("resolution audit: step must be positive");
  ResolutionReport rep;
  rep.species = species.name;
  rep.cs0 = cs0;
  rep.healing_length = m_to_microns(healing_length(cs0, species));
  rep.step = step;
  rep.ratio = step / rep.healing_length;
  rep.resolution_pass = rep.ratio >= opts.factor;
  rep.throat_resolved = b0 >= rep.healing_length;
  return rep;
}

ResolutionReport resolution_audit(const GpSolution& solution, const AtomSpecies& species,
                                  double step, double b0, const ResolutionOptions& opts) {
  double cs0_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < solution.size(); ++i) {
    if (solution.converged[i]) cs0_min = std::min(cs0_min, solution.cs0[i]);
  }
  if (!std::isfinite(cs0_min)) throw DomainError("resolution audit: no converged points");
  return resolution_audit(cs0_min, species, step, b0, opts);
}

ResolutionReport resolution_audit(const std::vector<ProfileSample3D>& profile,
                                  const AtomSpecies& species, double step, double b0,
                                  const ResolutionOptions& opts) {
  double cs0_min = std::numeric_limits<double>::infinity();
  for (const auto& p : profile) {
    if (p.valid) cs0_min = std::min(cs0_min, p.cs0);
  }
  if (!std::isfinite(cs0_min)) throw DomainError("resolution audit: no valid samples");
  return resolution_audit(cs0_min, species, step, b0, opts);
}

}  // namespace becwh
