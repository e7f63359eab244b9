#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "sope/core.hpp"
#include "sope/sope.hpp"

namespace testutil {

// Bypasses the scheme's default ratio, which need not fit small d.
inline sope::EncodingConfig config(sope::Scheme scheme, int d, std::array<int, 4> ratio,
                                   bool mixing = true) {
  sope::EncodingConfig cfg;
  cfg.scheme = scheme;
  cfg.d = d;
  cfg.allocation = sope::allocate_bands(ratio, d);
  cfg.scale.enabled = mixing;
  return cfg;
}

// Relative comparison with an absolute floor of 1, so near-zero scores do
// not blow up the ratio.
inline bool close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<double> random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = normal(rng);
  return v;
}

// All seven components drawn independently; schemes read only the
// components they use, so no spherical consistency is required here.
inline sope::PositionIndex random_index(std::mt19937_64& rng, double lo = -10.0,
                                        double hi = 10.0) {
  sope::PositionIndex idx;
  idx.t = uniform(rng, lo, hi);
  idx.x = uniform(rng, lo, hi);
  idx.y = uniform(rng, lo, hi);
  idx.z = uniform(rng, lo, hi);
  idx.r = uniform(rng, lo, hi);
  idx.theta = uniform(rng, lo, hi);
  idx.phi = uniform(rng, lo, hi);
  return idx;
}

inline double norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace testutil
