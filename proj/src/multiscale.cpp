#include "sope/multiscale.hpp"

#include <cmath>

namespace sope {

double g_lin(double u) { return u; }

double g_log(double u) { return std::copysign(std::log1p(std::fabs(u)), u); }

double g_per(double u, double period) {
  if (!(period > 0.0)) {
    throw ValueError("g_per: period must be positive, got " + std::to_string(period));
  }
  return period / kTwoPi * std::sin(kTwoPi * u / period);
}

double period_for(const ScaleConfig& cfg, Component c) {
  switch (c) {
    case Component::kT:
      return cfg.period_t;
    case Component::kTheta:
      return cfg.period_theta;
    case Component::kPhi:
      return cfg.period_phi;
    case Component::kR:
    case Component::kX:
    case Component::kY:
    case Component::kZ:
      return cfg.period_r;
  }
  throw ValueError("period_for: unknown component");
}

namespace {

double ladder_angle(const BaseAngles& angles, int k, double base_override) {
  if (base_override <= 0.0) return angles[k];
  return std::pow(base_override,
                  -2.0 * static_cast<double>(k) / static_cast<double>(angles.d));
}

}  // namespace

double mixed_phase(double u, int pair_index, const BaseAngles& angles, const ScaleConfig& cfg,
                   Component component) {
  if (pair_index < 0 || pair_index >= angles.pairs()) {
    throw DimensionError("mixed_phase: pair index " + std::to_string(pair_index) +
                         " outside [0, " + std::to_string(angles.pairs()) + ")");
  }
  if (!cfg.enabled) return angles[pair_index] * u;

  const double w_lin = angles[pair_index];
  const double w_log = ladder_angle(angles, pair_index, cfg.base_log);
  const double w_per = ladder_angle(angles, pair_index, cfg.base_per);
  const double period = period_for(cfg, component);
  return (w_lin * g_lin(u) + w_log * g_log(u) + w_per * g_per(u, period)) / 3.0;
}

}  // namespace sope
