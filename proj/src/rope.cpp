#include "sope/rope.hpp"

#include <cmath>

namespace sope {

RotationPlan rope_phases(double t, const BaseAngles& angles) {
  RotationPlan plan;
  plan.phases.resize(angles.angles.size());
  for (std::size_t i = 0; i < angles.angles.size(); ++i) {
    plan.phases[i] = angles.angles[i] * t;
  }
  return plan;
}

std::vector<double> apply_rotation(std::span<const double> v, const RotationPlan& plan) {
  if (static_cast<int>(v.size()) != plan.d()) {
    throw DimensionError("apply_rotation: vector length " + std::to_string(v.size()) +
                         " does not match plan dimension " + std::to_string(plan.d()));
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < plan.phases.size(); ++i) {
    const double c = std::cos(plan.phases[i]);
    const double s = std::sin(plan.phases[i]);
    const double a = v[2 * i];
    const double b = v[2 * i + 1];
    out[2 * i] = a * c - b * s;
    out[2 * i + 1] = a * s + b * c;
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot: vector lengths differ (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double rope_score(std::span<const double> q, std::span<const double> k, double t1, double t2,
                  const BaseAngles& angles) {
  if (q.size() != k.size()) {
    throw DimensionError("rope_score: q and k lengths differ (" + std::to_string(q.size()) +
                         " vs " + std::to_string(k.size()) + ")");
  }
  if (static_cast<int>(q.size()) != angles.d) {
    throw DimensionError("rope_score: vector length " + std::to_string(q.size()) +
                         " does not match head dimension " + std::to_string(angles.d));
  }
  return dot(apply_rotation(q, rope_phases(t1, angles)),
             apply_rotation(k, rope_phases(t2, angles)));
}

}  // namespace sope
