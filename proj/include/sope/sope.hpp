#pragma once

#include <span>

#include "sope/core.hpp"
#include "sope/multiscale.hpp"
#include "sope/rope.hpp"

namespace sope {

enum class Scheme { kRope, kRope3d, kSope };

// (n_t, n_c1, n_c2, n_c3): SoPE defaults to t:r:theta:phi = 24:2:3:3;
// RoPE-3D defaults to t:x:y:z = 5:1:1:1 (40/8/8/8 pairs at d = 128),
// spatial bands first. Vanilla RoPE routes everything through t.
std::array<int, 4> default_ratio(Scheme scheme);

struct EncodingConfig {
  Scheme scheme = Scheme::kSope;
  int d = 128;
  double base = 10000.0;
  BandAllocation allocation;  // ignored by kRope
  ScaleConfig scale;          // ignored by kRope
  // Reduce azimuth displacements into (-pi, pi]. Only displacement-based
  // analysis can honor this; per-token rotation realizes the raw
  // difference, which is why it defaults off.
  bool wrap_azimuth = false;
};

// Validated config with the scheme's default allocation.
EncodingConfig make_config(Scheme scheme, int d = 128, double base = 10000.0);

// SoPE rotation plan: pairs in the r-band take their phase from idx.r,
// theta-band from idx.theta, phi-band from idx.phi, t-band from idx.t.
// Pair k always uses the global ladder angles[k], so the phi-block runs on
// the ladder's middle rungs rather than restarting at angles[0].
RotationPlan sope_phases(const PositionIndex& idx, const EncodingConfig& cfg);

// Same band machinery over Cartesian components (x, y, z, t).
RotationPlan rope3d_phases(const PositionIndex& idx, const EncodingConfig& cfg);

// Dispatch on cfg.scheme; vanilla RoPE ignores allocation and scale.
RotationPlan plan_for(const PositionIndex& idx, const EncodingConfig& cfg);

// Rotate every token's feature vector by its plan. Tokens are independent,
// so the result does not depend on threads.
TokenSequence encode(const TokenSequence& tokens, const EncodingConfig& cfg, Role role,
                     int threads = 1);

// dot(rotate(q, idx1), rotate(k, idx2)) under any scheme. With mixing off
// this equals the four-block relative evaluation driven by the component
// displacements idx2 - idx1.
double sope_score(std::span<const double> q, std::span<const double> k,
                  const PositionIndex& idx1, const PositionIndex& idx2,
                  const EncodingConfig& cfg);

}  // namespace sope
