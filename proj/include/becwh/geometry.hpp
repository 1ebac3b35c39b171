#pragma once

#include <cmath>
#include <string>

#include "becwh/errors.hpp"
#include "becwh/quadrature.hpp"

namespace becwh {

/// Power-law wormhole shape function b(r) = b0^(1-q) r^q.
///
/// Lengths are in any consistent unit (μm at the CLI boundary). The redshift
/// function is identically zero throughout the library.
struct ShapeFunction {
  double b0 = 1.0;
  double q = -1.0;

  ShapeFunction() = default;
  ShapeFunction(double throat_radius, double exponent) : b0(throat_radius), q(exponent) {
    if (!(b0 > 0.0) || !std::isfinite(b0)) {
      throw DomainError("shape function: throat radius b0 must be positive");
    }
    if (!std::isfinite(q)) throw DomainError("shape function: exponent q must be finite");
  }

  /// The Ellis wormhole, b(r) = b0^2 / r.
  static ShapeFunction ellis(double throat_radius) { return {throat_radius, -1.0}; }
};

enum class ThroatClass { Traversable, Degenerate, SignatureBroken };

/// Flare-out classification from db/dr at the throat, which equals q.
constexpr ThroatClass classify(double q) {
  if (q < 1.0) return ThroatClass::Traversable;
  if (q == 1.0) return ThroatClass::Degenerate;
  return ThroatClass::SignatureBroken;
}

inline ThroatClass classify(const ShapeFunction& s) { return classify(s.q); }

std::string to_string(ThroatClass c);

namespace detail {
inline void require_outside_throat(const ShapeFunction& s, double r) {
  if (!(r >= s.b0)) {
    throw DomainError("r = " + std::to_string(r) + " is inside the throat (b0 = " +
                      std::to_string(s.b0) + ")");
  }
}
inline void require_traversable(const ShapeFunction& s, const char* what) {
  if (classify(s) != ThroatClass::Traversable) {
    throw DomainError(std::string(what) + " requires q < 1 (got q = " +
                      std::to_string(s.q) + ")");
  }
}
}  // namespace detail

template <typename Scalar>
Scalar shape_b(const ShapeFunction& s, Scalar r) {
  detail::require_outside_throat(s, static_cast<double>(r));
  if (r == Scalar(s.b0)) return Scalar(s.b0);
  using std::pow;
  return pow(Scalar(s.b0), Scalar(1.0 - s.q)) * pow(r, Scalar(s.q));
}

/// 1 - b(r)/r. Non-positive for q >= 1 outside the throat; callers classify.
template <typename Scalar>
Scalar metric_factor(const ShapeFunction& s, Scalar r) {
  detail::require_outside_throat(s, static_cast<double>(r));
  using std::expm1;
  using std::log;
  // 1 - (b0/r)^(1-q), evaluated without cancellation near the throat.
  return -expm1(Scalar(1.0 - s.q) * log(Scalar(s.b0) / r));
}

/// Local light speed of the conformally reduced 1+1D line element.
template <typename Scalar>
Scalar effective_light_speed(const ShapeFunction& s, Scalar r, Scalar c) {
  const Scalar f = metric_factor(s, r);
  if (f < Scalar(0)) {
    throw DomainError("effective light speed: negative metric factor (signature broken)");
  }
  using std::sqrt;
  return c * sqrt(f);
}

enum class Side { Upper = +1, Lower = -1 };

constexpr double sign_of(Side side) { return side == Side::Upper ? 1.0 : -1.0; }

/// Signed proper radial distance to the throat, ±∫_{b0}^{r} (1 - b/r')^(-1/2) dr'.
double proper_distance(const ShapeFunction& s, double r, Side side = Side::Upper,
                       const QuadratureOptions& opts = {});

/// Height z(r) >= 0 of the embedding surface of revolution, with z(b0) = 0
/// and dz/dr = (r/b(r) - 1)^(-1/2). Mirror ±z for the two sheets.
double embedding_height(const ShapeFunction& s, double r,
                        const QuadratureOptions& opts = {});

}  // namespace becwh
