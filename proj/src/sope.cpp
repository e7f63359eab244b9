#include "sope/sope.hpp"

#include <string>

#include "parallel.hpp"

namespace sope {

std::array<int, 4> default_ratio(Scheme scheme) {
  switch (scheme) {
    case Scheme::kRope:
      return {1, 0, 0, 0};
    case Scheme::kRope3d:
      return {5, 1, 1, 1};
    case Scheme::kSope:
      return {24, 2, 3, 3};
  }
  throw ValueError("default_ratio: unknown scheme");
}

EncodingConfig make_config(Scheme scheme, int d, double base) {
  EncodingConfig cfg;
  cfg.scheme = scheme;
  cfg.d = d;
  cfg.base = base;
  cfg.allocation = allocate_bands(default_ratio(scheme), d);
  return cfg;
}

namespace {

void check_config(const EncodingConfig& cfg) {
  if (cfg.d < 2 || cfg.d % 2 != 0) {
    throw DimensionError("encoding config: head dimension must be a positive even integer, got " +
                         std::to_string(cfg.d));
  }
  if (cfg.scheme != Scheme::kRope && cfg.allocation.pairs() != cfg.d / 2) {
    throw DimensionError("encoding config: allocation covers " +
                         std::to_string(cfg.allocation.pairs()) + " pairs but d/2 = " +
                         std::to_string(cfg.d / 2));
  }
  // Validated here so no worker thread can throw mid-encode.
  if (cfg.scheme != Scheme::kRope && cfg.scale.enabled) {
    for (double period :
         {cfg.scale.period_t, cfg.scale.period_r, cfg.scale.period_theta, cfg.scale.period_phi}) {
      if (!(period > 0.0)) {
        throw ValueError("encoding config: scale periods must be positive, got " +
                         std::to_string(period));
      }
    }
  }
}

// Phases for one band: pair k in [range) driven by coordinate u.
void fill_band(RotationPlan& plan, const PairRange& range, double u, Component component,
               const BaseAngles& angles, const ScaleConfig& scale) {
  for (int k = range.begin; k < range.end; ++k) {
    plan.phases[static_cast<std::size_t>(k)] = mixed_phase(u, k, angles, scale, component);
  }
}

RotationPlan plan_with_ladder(const PositionIndex& idx, const EncodingConfig& cfg,
                              const BaseAngles& angles) {
  RotationPlan plan;
  plan.phases.resize(angles.angles.size());
  if (cfg.scheme == Scheme::kRope) {
    for (int k = 0; k < angles.pairs(); ++k) {
      plan.phases[static_cast<std::size_t>(k)] = angles[k] * idx.t;
    }
    return plan;
  }
  const BandAllocation& a = cfg.allocation;
  if (cfg.scheme == Scheme::kSope) {
    fill_band(plan, a.r, idx.r, Component::kR, angles, cfg.scale);
    fill_band(plan, a.theta, idx.theta, Component::kTheta, angles, cfg.scale);
    fill_band(plan, a.phi, idx.phi, Component::kPhi, angles, cfg.scale);
  } else {
    fill_band(plan, a.r, idx.x, Component::kX, angles, cfg.scale);
    fill_band(plan, a.theta, idx.y, Component::kY, angles, cfg.scale);
    fill_band(plan, a.phi, idx.z, Component::kZ, angles, cfg.scale);
  }
  fill_band(plan, a.t, idx.t, Component::kT, angles, cfg.scale);
  return plan;
}

}  // namespace

RotationPlan sope_phases(const PositionIndex& idx, const EncodingConfig& cfg) {
  if (cfg.scheme != Scheme::kSope) {
    throw DimensionError("sope_phases: config scheme is not sope");
  }
  check_config(cfg);
  return plan_with_ladder(idx, cfg, base_angles(cfg.d, cfg.base));
}

RotationPlan rope3d_phases(const PositionIndex& idx, const EncodingConfig& cfg) {
  if (cfg.scheme != Scheme::kRope3d) {
    throw DimensionError("rope3d_phases: config scheme is not rope3d");
  }
  check_config(cfg);
  return plan_with_ladder(idx, cfg, base_angles(cfg.d, cfg.base));
}

RotationPlan plan_for(const PositionIndex& idx, const EncodingConfig& cfg) {
  check_config(cfg);
  return plan_with_ladder(idx, cfg, base_angles(cfg.d, cfg.base));
}

TokenSequence encode(const TokenSequence& tokens, const EncodingConfig& cfg, Role role,
                     int threads) {
  check_config(cfg);
  for (std::size_t i = 0; i < tokens.tokens.size(); ++i) {
    if (static_cast<int>(tokens.tokens[i].features.size()) != cfg.d) {
      throw DimensionError("encode: token " + std::to_string(i) + " has feature length " +
                           std::to_string(tokens.tokens[i].features.size()) + ", expected " +
                           std::to_string(cfg.d));
    }
  }
  const BaseAngles angles = base_angles(cfg.d, cfg.base);
  TokenSequence out;
  out.role = role;
  out.tokens.resize(tokens.tokens.size());
  detail::parallel_for(tokens.tokens.size(), threads, [&](std::size_t i) {
    const Token& token = tokens.tokens[i];
    out.tokens[i].index = token.index;
    out.tokens[i].features =
        apply_rotation(token.features, plan_with_ladder(token.index, cfg, angles));
  });
  return out;
}

double sope_score(std::span<const double> q, std::span<const double> k,
                  const PositionIndex& idx1, const PositionIndex& idx2,
                  const EncodingConfig& cfg) {
  check_config(cfg);
  if (q.size() != k.size() || static_cast<int>(q.size()) != cfg.d) {
    throw DimensionError("sope_score: vector lengths (" + std::to_string(q.size()) + ", " +
                         std::to_string(k.size()) + ") do not match head dimension " +
                         std::to_string(cfg.d));
  }
  const BaseAngles angles = base_angles(cfg.d, cfg.base);
  return dot(apply_rotation(q, plan_with_ladder(idx1, cfg, angles)),
             apply_rotation(k, plan_with_ladder(idx2, cfg, angles)));
}

}  // namespace sope
