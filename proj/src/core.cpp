#include "sope/core.hpp"

#include <cmath>

namespace sope {

BaseAngles base_angles(int d, double base) {
  if (d < 2 || d % 2 != 0) {
    throw DimensionError("base_angles: head dimension must be a positive even integer, got " +
                         std::to_string(d));
  }
  if (!(base > 1.0)) {
    throw ValueError("base_angles: base must be > 1, got " + std::to_string(base));
  }
  BaseAngles out;
  out.d = d;
  out.base = base;
  out.angles.resize(static_cast<std::size_t>(d / 2));
  for (int i = 0; i < d / 2; ++i) {
    out.angles[static_cast<std::size_t>(i)] =
        std::pow(base, -2.0 * static_cast<double>(i) / static_cast<double>(d));
  }
  return out;
}

double wrap_angle(double a) {
  double w = std::fmod(a + kPi, kTwoPi);
  if (w <= 0.0) w += kTwoPi;
  return w - kPi;
}

Displacement displacement(const PositionIndex& a, const PositionIndex& b, bool wrap_azimuth) {
  Displacement d;
  d.dt = a.t - b.t;
  d.dr = a.r - b.r;
  d.dtheta = a.theta - b.theta;
  d.dphi = a.phi - b.phi;
  if (wrap_azimuth) d.dphi = wrap_angle(d.dphi);
  return d;
}

BandAllocation allocate_bands(const std::array<int, 4>& ratio, int d) {
  if (d < 2 || d % 2 != 0) {
    throw DimensionError("allocate_bands: head dimension must be a positive even integer, got " +
                         std::to_string(d));
  }
  int sum = 0;
  for (int entry : ratio) {
    if (entry < 0) {
      throw ValueError("allocate_bands: ratio entries must be nonnegative, got " +
                       std::to_string(entry));
    }
    sum += entry;
  }
  if (sum == 0) {
    throw ValueError("allocate_bands: ratio must have at least one positive entry");
  }
  const int pairs = d / 2;
  if (pairs % sum != 0) {
    throw AllocationError("allocate_bands: ratio sum " + std::to_string(sum) +
                          " does not divide d/2 = " + std::to_string(pairs) + " (remainder " +
                          std::to_string(pairs % sum) + ")");
  }
  const int scale = pairs / sum;

  BandAllocation out;
  out.ratio = ratio;
  // Spatial sub-bands take the front (high-frequency) pairs, t the tail.
  const int nr = scale * ratio[1];
  const int ntheta = scale * ratio[2];
  const int nphi = scale * ratio[3];
  out.r = {0, nr};
  out.theta = {nr, nr + ntheta};
  out.phi = {nr + ntheta, nr + ntheta + nphi};
  out.t = {nr + ntheta + nphi, pairs};
  return out;
}

}  // namespace sope
