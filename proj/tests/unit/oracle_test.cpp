#include "sope/oracle.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace sope;
using oracle::DenseRotation;
using testutil::close;

namespace {

RotationPlan random_plan(std::mt19937_64& rng, int pairs) {
  RotationPlan plan;
  for (int i = 0; i < pairs; ++i) plan.phases.push_back(testutil::uniform(rng, -20, 20));
  return plan;
}

double max_abs_diff_from_identity(const DenseRotation& m) {
  double worst = 0.0;
  for (int i = 0; i < m.d; ++i) {
    for (int j = 0; j < m.d; ++j) {
      double acc = 0.0;
      for (int l = 0; l < m.d; ++l) acc += m.at(l, i) * m.at(l, j);  // (M^T M)_{ij}
      worst = std::max(worst, std::fabs(acc - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("build_dense: explicit constructions") {
  SUBCASE("zero phases build the identity") {
    RotationPlan plan;
    plan.phases = {0.0, 0.0};
    const DenseRotation m = oracle::build_dense(plan);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) CHECK(m.at(i, j) == (i == j ? 1.0 : 0.0));
    }
  }
  SUBCASE("half turn at d=2") {
    RotationPlan plan;
    plan.phases = {kPi};
    const DenseRotation m = oracle::build_dense(plan);
    CHECK(std::fabs(m.at(0, 0) + 1.0) <= 1e-15);
    CHECK(std::fabs(m.at(0, 1)) <= 1e-15);
    CHECK(std::fabs(m.at(1, 0)) <= 1e-15);
    CHECK(std::fabs(m.at(1, 1) + 1.0) <= 1e-15);
  }
  SUBCASE("quarter turn next to identity at d=4") {
    RotationPlan plan;
    plan.phases = {kPi / 2, 0.0};
    const DenseRotation m = oracle::build_dense(plan);
    CHECK(std::fabs(m.at(0, 0)) <= 1e-15);
    CHECK(m.at(0, 1) == -1.0);
    CHECK(m.at(1, 0) == 1.0);
    CHECK(std::fabs(m.at(1, 1)) <= 1e-15);
    CHECK(m.at(2, 2) == 1.0);
    CHECK(m.at(3, 3) == 1.0);
    CHECK(m.at(2, 3) == 0.0);
    CHECK(m.at(0, 2) == 0.0);
  }
}

TEST_CASE("build_dense: orthogonality") {
  std::mt19937_64 rng(61);
  for (int pairs : {1, 2, 4, 8}) {
    for (int trial = 0; trial < 50; ++trial) {
      CHECK(max_abs_diff_from_identity(oracle::build_dense(random_plan(rng, pairs))) <= 1e-12);
    }
  }
}

TEST_CASE("build_dense: relative-matrix identity bridges the two forms") {
  std::mt19937_64 rng(62);
  const BaseAngles a = base_angles(8);
  for (int trial = 0; trial < 100; ++trial) {
    const double t1 = testutil::uniform(rng, -10, 10);
    const double t2 = testutil::uniform(rng, -10, 10);
    const DenseRotation m1 = oracle::build_dense(rope_phases(t1, a));
    const DenseRotation m2 = oracle::build_dense(rope_phases(t2, a));
    const DenseRotation rel = oracle::build_dense(rope_phases(t2 - t1, a));
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        double acc = 0.0;
        for (int l = 0; l < 8; ++l) acc += m1.at(l, i) * m2.at(l, j);  // (M1^T M2)_{ij}
        CHECK(std::fabs(acc - rel.at(i, j)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("dense_score: identity and shared plans recover the dot product") {
  std::mt19937_64 rng(63);
  const std::vector<double> q = testutil::random_vector(rng, 8);
  const std::vector<double> k = testutil::random_vector(rng, 8);
  RotationPlan identity;
  identity.phases = {0.0, 0.0, 0.0, 0.0};
  CHECK(oracle::dense_score(q, k, identity, identity) == dot(q, k));

  for (int trial = 0; trial < 100; ++trial) {
    const RotationPlan plan = random_plan(rng, 4);
    CHECK(close(oracle::dense_score(q, k, plan, plan), dot(q, k), 1e-12));
  }
}

TEST_CASE("dense_score: shape errors") {
  const std::vector<double> q(8, 1.0);
  const std::vector<double> k(6, 1.0);
  RotationPlan plan;
  plan.phases = {0.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(oracle::dense_score(q, k, plan, plan), DimensionError);
}

TEST_CASE("relative_block_score: zero displacement recovers the dot product") {
  std::mt19937_64 rng(64);
  const BaseAngles a = base_angles(16);
  const BandAllocation alloc = allocate_bands({2, 1, 1, 4}, 16);
  const std::vector<double> q = testutil::random_vector(rng, 16);
  const std::vector<double> k = testutil::random_vector(rng, 16);
  // pairwise block sums associate differently from the sequential dot
  CHECK(close(oracle::relative_block_score(q, k, Displacement{}, alloc, a), dot(q, k), 1e-12));
}
