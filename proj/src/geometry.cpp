#include "becwh/geometry.hpp"

#include <cmath>

namespace becwh {

std::string to_string(ThroatClass c) {
  switch (c) {
    case ThroatClass::Traversable: return "traversable";
    case ThroatClass::Degenerate: return "degenerate";
    case ThroatClass::SignatureBroken: return "signature-broken";
  }
  return "unknown";
}

namespace {

// Both radial integrands carry an inverse-square-root singularity at the
// throat. With r = b0 + u^2 the integrand 2u g(r(u)) is finite at u = 0.
template <class Integrand>
double integrate_from_throat(const ShapeFunction& s, double r, Integrand&& g,
                             const QuadratureOptions& opts) {
  detail::require_outside_throat(s, r);
  if (r == s.b0) return 0.0;
  const double u_max = std::sqrt(r - s.b0);
  return integrate(g, 0.0, u_max, opts).value;
}

}  // namespace

double proper_distance(const ShapeFunction& s, double r, Side side,
                       const QuadratureOptions& opts) {
  detail::require_traversable(s, "proper distance");
  const double k = 1.0 - s.q;
  const double b0 = s.b0;
  auto integrand = [k, b0](double u) {
    if (u == 0.0) return 2.0 * std::sqrt(b0 / k);
    const double factor = -std::expm1(-k * std::log1p(u * u / b0));
    return 2.0 * u / std::sqrt(factor);
  };
  return sign_of(side) * integrate_from_throat(s, r, integrand, opts);
}

double embedding_height(const ShapeFunction& s, double r, const QuadratureOptions& opts) {
  detail::require_traversable(s, "embedding");
  const double k = 1.0 - s.q;
  const double b0 = s.b0;
  auto integrand = [k, b0](double u) {
    if (u == 0.0) return 2.0 * std::sqrt(b0 / k);
    const double excess = std::expm1(k * std::log1p(u * u / b0));  // r/b - 1
    return 2.0 * u / std::sqrt(excess);
  };
  return integrate_from_throat(s, r, integrand, opts);
}

}  // namespace becwh
