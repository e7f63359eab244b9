#include "sope/core.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace sope;
using testutil::close;

TEST_CASE("base_angles: d=128 ladder values") {
  const BaseAngles a = base_angles(128, 10000.0);
  REQUIRE(a.pairs() == 64);
  CHECK(a[0] == 1.0);
  // Direct exponentiation: 10000^(-32/128) = 10^-1, 10000^(-1/2) = 10^-2.
  CHECK(a[16] == std::pow(10.0, -1.0));
  CHECK(a[16] == 0.1);
  CHECK(a[32] == std::pow(10.0, -2.0));
  CHECK(a[32] == 0.01);
}

TEST_CASE("base_angles: strictly decreasing") {
  for (int d : {2, 4, 16, 128}) {
    const BaseAngles a = base_angles(d, 10000.0);
    CHECK(a[0] == 1.0);
    for (int i = 1; i < a.pairs(); ++i) {
      CHECK(a[i] < a[i - 1]);
      CHECK(a[i] > 0.0);
    }
  }
}

TEST_CASE("base_angles: geometric in the exponent") {
  const BaseAngles a = base_angles(64, 500.0);
  for (int i = 0; i < a.pairs(); ++i) {
    CHECK(std::fabs(a[i] - std::pow(a[1], i)) <= 1e-12 * a[i]);
  }
}

TEST_CASE("base_angles: argument errors") {
  CHECK_THROWS_AS(base_angles(3, 10000.0), DimensionError);
  CHECK_THROWS_AS(base_angles(0, 10000.0), DimensionError);
  CHECK_THROWS_AS(base_angles(-4, 10000.0), DimensionError);
  CHECK_THROWS_AS(base_angles(128, 1.0), ValueError);
  CHECK_THROWS_AS(base_angles(128, 0.5), ValueError);
  CHECK_THROWS_AS(base_angles(128, -2.0), ValueError);
}

TEST_CASE("allocate_bands: paper default 24:2:3:3 at d=128") {
  const BandAllocation a = allocate_bands({24, 2, 3, 3}, 128);
  CHECK(a.t.count() == 48);
  CHECK(a.r.count() == 4);
  CHECK(a.theta.count() == 6);
  CHECK(a.phi.count() == 6);
  CHECK(a.r == PairRange{0, 4});
  CHECK(a.theta == PairRange{4, 10});
  CHECK(a.phi == PairRange{10, 16});
  CHECK(a.t == PairRange{16, 64});
}

TEST_CASE("allocate_bands: alternative ratios") {
  const BandAllocation uniform = allocate_bands({1, 1, 1, 1}, 128);
  CHECK(uniform.t.count() == 16);
  CHECK(uniform.r.count() == 16);
  CHECK(uniform.theta.count() == 16);
  CHECK(uniform.phi.count() == 16);

  const BandAllocation angular = allocate_bands({8, 6, 9, 9}, 128);
  CHECK(angular.t.count() == 16);
  CHECK(angular.r.count() == 12);
  CHECK(angular.theta.count() == 18);
  CHECK(angular.phi.count() == 18);
}

TEST_CASE("allocate_bands: errors") {
  CHECK_THROWS_AS(allocate_bands({1, 1, 1, 2}, 128), AllocationError);
  CHECK_THROWS_WITH_AS(allocate_bands({1, 1, 1, 2}, 128),
                       doctest::Contains("remainder 4"), AllocationError);
  CHECK_THROWS_AS(allocate_bands({0, 0, 0, 0}, 128), ValueError);
  CHECK_THROWS_AS(allocate_bands({-1, 2, 3, 4}, 128), ValueError);
  CHECK_THROWS_AS(allocate_bands({1, 1, 1, 1}, 7), DimensionError);
}

TEST_CASE("allocate_bands: totality over random valid ratios") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(0, 6);
  for (int d : {4, 8, 16, 64, 128}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::array<int, 4> ratio{entry(rng), entry(rng), entry(rng), entry(rng)};
      const int sum = ratio[0] + ratio[1] + ratio[2] + ratio[3];
      if (sum == 0) continue;
      if ((d / 2) % sum != 0) {
        CHECK_THROWS_AS(allocate_bands(ratio, d), AllocationError);
        continue;
      }
      const BandAllocation a = allocate_bands(ratio, d);
      CHECK(a.r.begin == 0);
      CHECK(a.r.end == a.theta.begin);
      CHECK(a.theta.end == a.phi.begin);
      CHECK(a.phi.end == a.t.begin);
      CHECK(a.t.end == d / 2);
      // every pair index belongs to exactly one component
      for (int k = 0; k < d / 2; ++k) {
        const int hits = a.r.contains(k) + a.theta.contains(k) + a.phi.contains(k) +
                         a.t.contains(k);
        CHECK(hits == 1);
      }
      const int scale = (d / 2) / sum;
      CHECK(a.t.count() == scale * ratio[0]);
      CHECK(a.r.count() == scale * ratio[1]);
      CHECK(a.theta.count() == scale * ratio[2]);
      CHECK(a.phi.count() == scale * ratio[3]);
    }
  }
}

TEST_CASE("displacement: literal subtraction") {
  PositionIndex a, b;
  SUBCASE("self-difference is zero") {
    a.t = 3.5;
    a.r = 1.25;
    a.theta = 0.5;
    a.phi = -2.0;
    const Displacement d = displacement(a, a, false);
    CHECK(d.dt == 0.0);
    CHECK(d.dr == 0.0);
    CHECK(d.dtheta == 0.0);
    CHECK(d.dphi == 0.0);
  }
  SUBCASE("component-wise differences") {
    a.t = 5;
    a.r = 2;
    a.theta = 1;
    a.phi = 3.0;
    b.t = 3;
    b.r = 1;
    b.theta = 0.5;
    b.phi = -3.0;
    const Displacement d = displacement(a, b, false);
    CHECK(d.dt == 2.0);
    CHECK(d.dr == 1.0);
    CHECK(d.dtheta == 0.5);
    CHECK(d.dphi == 6.0);

    const Displacement w = displacement(a, b, true);
    CHECK(w.dt == 2.0);
    CHECK(std::fabs(w.dphi - (6.0 - kTwoPi)) <= 1e-12);
  }
}

TEST_CASE("displacement: antisymmetry") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const PositionIndex a = testutil::random_index(rng);
    const PositionIndex b = testutil::random_index(rng);
    const Displacement ab = displacement(a, b, false);
    const Displacement ba = displacement(b, a, false);
    CHECK(ab.dt == -ba.dt);
    CHECK(ab.dr == -ba.dr);
    CHECK(ab.dtheta == -ba.dtheta);
    CHECK(ab.dphi == -ba.dphi);

    const Displacement wab = displacement(a, b, true);
    const Displacement wba = displacement(b, a, true);
    if (std::fabs(std::fabs(wab.dphi) - kPi) > 1e-12) {
      CHECK(std::fabs(wab.dphi + wba.dphi) <= 1e-12);
    }
    CHECK(wab.dphi > -kPi);
    CHECK(wab.dphi <= kPi);
  }
}

TEST_CASE("displacement: the +/-pi seam maps to +pi from both sides") {
  PositionIndex a, b;
  a.phi = kPi / 2;
  b.phi = -kPi / 2;
  // both orientations differ by exactly pi; the wrapped result is +pi twice
  CHECK(displacement(a, b, true).dphi == kPi);
  CHECK(displacement(b, a, true).dphi == kPi);
}

TEST_CASE("wrap_angle: range and fixed points") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const double a = testutil::uniform(rng, -50.0, 50.0);
    const double w = wrap_angle(a);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    // same angle modulo 2pi
    CHECK(std::fabs(std::remainder(w - a, kTwoPi)) <= 1e-9);
  }
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(kPi) == kPi);
  CHECK(wrap_angle(-kPi) == kPi);
}
