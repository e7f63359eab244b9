#include "sope/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace sope {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ValueError(std::string("invalid coordinate: ") + name + " is not finite");
  }
}

}  // namespace

Spherical cart_to_sph(double x, double y, double z) {
  require_finite(x, "x");
  require_finite(y, "y");
  require_finite(z, "z");

  Spherical s;
  s.r = std::sqrt(x * x + y * y + z * z);
  if (s.r == 0.0) return s;  // origin: (0, 0, 0) by convention

  s.theta = std::acos(std::clamp(z / s.r, -1.0, 1.0));
  if (x == 0.0 && y == 0.0) {
    s.phi = 0.0;  // on-axis
  } else {
    s.phi = std::atan2(y, x);
    if (s.phi <= -kPi) s.phi = kPi;  // only reachable with y = -0.0
    if (s.phi == 0.0) s.phi = 0.0;   // drop the sign of -0.0
  }
  return s;
}

Cartesian sph_to_cart(double r, double theta, double phi) {
  require_finite(r, "r");
  require_finite(theta, "theta");
  require_finite(phi, "phi");
  if (r < 0.0) {
    throw ValueError("invalid coordinate: radius must be nonnegative, got " + std::to_string(r));
  }
  const double st = std::sin(theta);
  return Cartesian{r * st * std::cos(phi), r * st * std::sin(phi), r * std::cos(theta)};
}

PositionIndex index_from_cartesian(double t, double x, double y, double z, Modality modality) {
  require_finite(t, "t");
  if (modality == Modality::kText) {
    x = 0.0;
    y = 0.0;
    z = 0.0;
  }
  const Spherical s = cart_to_sph(x, y, z);
  PositionIndex idx;
  idx.t = t;
  idx.x = x;
  idx.y = y;
  idx.z = z;
  idx.r = s.r;
  idx.theta = s.theta;
  idx.phi = s.phi;
  idx.modality = modality;
  return idx;
}

}  // namespace sope
