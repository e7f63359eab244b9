#pragma once

#include <span>

#include "sope/core.hpp"

namespace sope {

// Per-token rotation recipe under the consecutive-pair convention: feature
// dims (2i, 2i+1) form rotation pair i and rotate by phases[i]. Applying a
// plan preserves Euclidean norm.
struct RotationPlan {
  std::vector<double> phases;

  int pairs() const { return static_cast<int>(phases.size()); }
  int d() const { return 2 * pairs(); }
};

// Vanilla 1D RoPE phases at scalar position t: phases[i] = angles[i] * t.
RotationPlan rope_phases(double t, const BaseAngles& angles);

// Rotate each consecutive pair of v by the plan's phase.
std::vector<double> apply_rotation(std::span<const double> v, const RotationPlan& plan);

// Left-to-right sequential dot product; the determinism contract for every
// reduction in this library.
double dot(std::span<const double> a, std::span<const double> b);

// dot(apply_rotation(q, plan(t1)), apply_rotation(k, plan(t2))). Rotation
// composition makes this q^T R k with per-pair phase angles[i] * (t2 - t1),
// so the score depends on positions only through t2 - t1.
double rope_score(std::span<const double> q, std::span<const double> k, double t1, double t2,
                  const BaseAngles& angles);

}  // namespace sope
