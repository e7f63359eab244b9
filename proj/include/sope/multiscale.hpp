#pragma once

#include "sope/core.hpp"

namespace sope {

// Positional component a rotation pair is driven by. SoPE uses {T, R,
// Theta, Phi}; RoPE-3D uses {T, X, Y, Z}. The Cartesian axes share the
// radial period, since all three are metric lengths.
enum class Component { kT, kR, kTheta, kPhi, kX, kY, kZ };

// Multi-scale phase mixing settings. Periods parameterize the periodic
// transform per component; defaults are the natural angular ranges, an
// indoor-scene radial scale, and a typical sequence length.
struct ScaleConfig {
  bool enabled = true;
  double period_t = 1024.0;
  double period_r = 10.0;
  double period_theta = kPi;
  double period_phi = kTwoPi;
  // Distinct base ladders for the log/periodic scales; 0 shares the main
  // ladder.
  double base_log = 0.0;
  double base_per = 0.0;
};

// Identity; the linear scale.
double g_lin(double u);

// sign(u) * ln(1 + |u|): odd, monotone, defined at 0, |g_log(u)| <= |u|.
double g_log(double u);

// (P / 2pi) * sin(2pi u / P): period P, slope 1 at the origin so enabling
// mixing perturbs near-zero displacements minimally.
double g_per(double u, double period);

double period_for(const ScaleConfig& cfg, Component c);

// Phase of rotation pair k driven by coordinate u. With mixing enabled the
// three transforms of u are averaged, each weighted by that scale's ladder
// angle; disabled, this is exactly angles[k] * u. Mixing applies to the
// absolute coordinate before rotation, never to displacements, so phase
// differences under mixing are not functions of the displacement alone.
double mixed_phase(double u, int pair_index, const BaseAngles& angles, const ScaleConfig& cfg,
                   Component component);

}  // namespace sope
