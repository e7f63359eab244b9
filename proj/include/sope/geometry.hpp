#pragma once

#include "sope/core.hpp"

namespace sope {

struct Spherical {
  double r = 0.0;
  double theta = 0.0;  // polar angle, [0, pi]
  double phi = 0.0;    // azimuth, (-pi, pi]
};

struct Cartesian {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// r = sqrt(x^2+y^2+z^2), theta = arccos(z/r), phi = atan2(y, x).
//
// Branch pinning, so golden files are comparable across implementations:
//   - r = 0 maps to (0, 0, 0);
//   - on-axis x = y = 0, z != 0 maps to phi = 0;
//   - phi = +pi on the negative-x seam (never -pi), and -0.0 inputs behave
//     like +0.0.
Spherical cart_to_sph(double x, double y, double z);

// Inverse mapping, used for round-trip checks. Requires r >= 0; theta is
// the caller's responsibility.
Cartesian sph_to_cart(double r, double theta, double phi);

// Builds a PositionIndex carrying both coordinate forms. Text tokens take
// the degenerate convention (x,y,z) = 0 regardless of the arguments, so
// only their t-block phases vary.
PositionIndex index_from_cartesian(double t, double x, double y, double z, Modality modality);

}  // namespace sope
