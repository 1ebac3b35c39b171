#pragma once

#include <optional>
#include <string>
#include <vector>

#include "becwh/feshbach.hpp"
#include "becwh/gp3d.hpp"

namespace becwh {

/// Both branches of the wormhole laid out on x ∈ [0, 2R] with the throat at
/// x = R, so r = |x - R| + b0. Lengths in μm.
struct LabLayout {
  double R = 5.0;
  double b0 = 1.0;

  void validate() const;
  double radius_at(double x) const { return std::abs(x - R) + b0; }
};

struct SoundSpeeds3D {
  double cs0;
  double cs;
};

/// Zero-order c_s0 = v_inf r/b0 and c_s = v_inf sqrt(r²/b0² - 1).
SoundSpeeds3D sound_speed_profile_3d(double r, double v_inf, double b0);

/// D(r) = 1 - (v_inf/c̃_s)² (r²/b0² - 1); the field is width/D + B0.
double field_denominator_3d(double r, double v_inf, double b0, const CondensateSpec& spec);

struct FieldValue3D {
  double B;
  double denominator;
  bool near_asymptote;
};

/// Field realising the zero-order profile. |D| < pole_delta sets the flag;
/// D == 0 throws PoleError located at r*.
FieldValue3D field_profile_3d(double r, double v_inf, double b0, const CondensateSpec& spec,
                              double pole_delta = 1e-3);

/// a/a_bg = (v_inf/c̃_s)² (r²/b0² - 1). Grows without bound in r.
double scattering_profile_3d(double r, double v_inf, double b0, const CondensateSpec& spec);

/// r* = b0 sqrt(1 + c̃_s²/v_inf²), where D vanishes and a = a_bg.
double asymptote_radius(double v_inf, double b0, const CondensateSpec& spec);

struct ProfileSample3D {
  double x = 0.0;
  double r = 0.0;
  double cs0 = 0.0;
  double cs = 0.0;
  double B = 0.0;  // NaN near an asymptote
  double a_over_abg = 0.0;
  double vr = 0.0;
  bool valid = false;
  bool near_asymptote = false;
};

struct ProfileOptions3D {
  double pole_delta = 1e-3;
  /// Numerical solution to use instead of the zero-order profile; it is
  /// interpolated linearly in r and must cover [b0, R + b0] to be used
  /// there (zero order elsewhere).
  const GpSolution* solution = nullptr;
};

std::vector<double> lab_grid_3d(const LabLayout& layout, double step);

std::vector<ProfileSample3D> lab_profiles_3d(const LabLayout& layout, double v_inf,
                                             const CondensateSpec& spec, double step,
                                             const ProfileOptions3D& opts = {});

/// Lab positions of the field poles on the grid, refined by bisection on D.
std::vector<double> detect_asymptotes(const LabLayout& layout, double v_inf,
                                      const CondensateSpec& spec, double step);

/// Analytic pole positions R ± (r* - b0) that fall inside [0, 2R].
std::vector<double> analytic_asymptotes(const LabLayout& layout, double v_inf,
                                        const CondensateSpec& spec);

struct ResolutionOptions {
  double factor = 10.0;  // required step / ξ
};

struct ResolutionReport {
  std::string species;
  double cs0 = 0.0;           // m/s, where ξ is evaluated
  double healing_length = 0.0;  // μm
  double step = 0.0;            // μm
  double ratio = 0.0;           // step / ξ
  bool resolution_pass = false;  // ratio >= factor
  bool throat_resolved = false;  // b0 >= ξ
};

/// ξ at the given (smallest relevant) c_s0 against the spatial step and
/// the throat radius. Lengths in μm.
ResolutionReport resolution_audit(double cs0, const AtomSpecies& species, double step,
                                  double b0, const ResolutionOptions& opts = {});
ResolutionReport resolution_audit(const GpSolution& solution, const AtomSpecies& species,
                                  double step, double b0, const ResolutionOptions& opts = {});
ResolutionReport resolution_audit(const std::vector<ProfileSample3D>& profile,
                                  const AtomSpecies& species, double step, double b0,
                                  const ResolutionOptions& opts = {});

}  // namespace becwh
