#pragma once

#include <cstdint>
#include <vector>

namespace sope {

// Counter-based generator pinning synthetic features across runs, thread
// counts, and reimplementations in other languages. The bit stream is
// SplitMix64 read as a pure function of (seed, counter):
//
//   value(seed, i) = mix(seed + (i + 1) * 0x9E3779B97F4A7C15)
//   mix(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//           z ^= z >> 27; z *= 0x94D049BB133111EB;
//           z ^= z >> 31
//
// so value(0, 0) = 0xE220A8397B1DCDAF.
std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t counter);

// Map 64 random bits to (0, 1]: ((bits >> 11) + 1) * 2^-53.
double unit_double(std::uint64_t bits);

// Standard-normal feature vector for one token via Box-Muller: pair p of
// token row i consumes counters (i*d + 2p, i*d + 2p + 1) and yields
//   z0 = sqrt(-2 ln u1) cos(2 pi u2),  z1 = sqrt(-2 ln u1) sin(2 pi u2).
std::vector<double> synth_features(std::uint64_t seed, std::uint64_t token_row, int d);

}  // namespace sope
