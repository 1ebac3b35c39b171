#pragma once

#include <vector>

#include "becwh/feshbach.hpp"
#include "becwh/geometry.hpp"

namespace becwh {

/// One point of the 1+1D recipe. Lengths in μm, field in Gauss, c_s in m/s.
/// `cs` is NaN (and `valid` false) where the required field sits in the
/// attractive window, which is the case for every r > b0 when q > 1.
struct ProfileSample1D {
  double x = 0.0;
  double r = 0.0;
  double a_over_abg = 0.0;
  double a_over_100a0 = 0.0;
  double B = 0.0;
  double cs = 0.0;
  bool valid = false;
};

/// Symmetric lab grid in μm; the point count is floor((max - min)/step) + 1.
struct Grid1D {
  double x_min = -20.0;
  double x_max = 20.0;
  double step = 0.1;

  std::vector<double> points() const;
};

/// Detuning B - B0 that realises the shape function: (r/b0)^(1-q) width.
double field_detuning_1d(const ShapeFunction& s, const FeshbachResonance& res, double r);
/// Absolute field (r/b0)^(1-q) width + B0.
double field_profile_1d(const ShapeFunction& s, const FeshbachResonance& res, double r);
/// a/a_bg = 1 - (b0/r)^(1-q).
double scattering_profile_1d(const ShapeFunction& s, double r);

struct RadialPoint {
  double r;
  Side side;
};

/// x = ±(r - b0); the throat sits at x = 0.
double lab_coordinate_1d(double r, double b0, Side side);
RadialPoint radius_from_lab_1d(double x, double b0);

/// d[a/(100 a0)]/dx in 1/μm (signed, odd in x). At x = 0 the profile has a
/// kink; the right-hand limit (1-q) (a_bg/100a0) / b0 is returned.
double slope_metric(const ShapeFunction& s, const FeshbachResonance& res, double x);

std::vector<ProfileSample1D> sample_profile_1d(const ShapeFunction& s,
                                               const CondensateSpec& spec,
                                               const Grid1D& grid);

struct FeasibilityOptions1D {
  double threshold = 0.067;       // 1/μm, experimentally demonstrated slope
  double throat_exclusion = 1.0;  // μm; samples with |x| < this are skipped
  double reference_x = 10.0;      // μm
};

struct Feasibility1D {
  double max_slope = 0.0;  // max |slope| outside the exclusion window
  double slope_at = 0.0;   // x of that maximum
  double threshold = 0.0;
  double reference_x = 0.0;
  double reference_slope = 0.0;  // |slope| at reference_x
  bool feasible = false;         // max_slope <= threshold
};

Feasibility1D feasibility_1d(const ShapeFunction& s, const CondensateSpec& spec,
                             const Grid1D& grid, const FeasibilityOptions1D& opts = {});

}  // namespace becwh
