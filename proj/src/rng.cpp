#include "sope/rng.hpp"

#include <cmath>

#include "sope/core.hpp"

namespace sope {

std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

std::vector<double> synth_features(std::uint64_t seed, std::uint64_t token_row, int d) {
  if (d < 2 || d % 2 != 0) {
    throw DimensionError("synth_features: feature length must be a positive even integer, got " +
                         std::to_string(d));
  }
  std::vector<double> out(static_cast<std::size_t>(d));
  const std::uint64_t base = token_row * static_cast<std::uint64_t>(d);
  for (int p = 0; p < d / 2; ++p) {
    const double u1 = unit_double(counter_rng(seed, base + 2 * static_cast<std::uint64_t>(p)));
    const double u2 = unit_double(counter_rng(seed, base + 2 * static_cast<std::uint64_t>(p) + 1));
    const double radius = std::sqrt(-2.0 * std::log(u1));
    out[static_cast<std::size_t>(2 * p)] = radius * std::cos(kTwoPi * u2);
    out[static_cast<std::size_t>(2 * p + 1)] = radius * std::sin(kTwoPi * u2);
  }
  return out;
}

}  // namespace sope
