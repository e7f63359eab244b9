#pragma once

#include <span>

#include "sope/core.hpp"
#include "sope/rope.hpp"

// Brute-force ground truth for equivalence testing: the rotation matrices
// are materialized densely and scores evaluated by full matrix-vector
// products. Clarity over speed throughout; not a production code path.
namespace sope::oracle {

struct DenseRotation {
  int d = 0;
  std::vector<double> m;  // row-major d x d

  double at(int row, int col) const {
    return m[static_cast<std::size_t>(row) * static_cast<std::size_t>(d) +
             static_cast<std::size_t>(col)];
  }
};

// 2x2 rotation blocks on consecutive pairs, zeros elsewhere. Every built
// matrix is orthogonal.
DenseRotation build_dense(const RotationPlan& plan);

// (M_q q) . (M_k k) by dense evaluation; the reference for the pairwise
// fast paths.
double dense_score(std::span<const double> q, std::span<const double> k,
                   const RotationPlan& plan_q, const RotationPlan& plan_k);

// Literal four-block relative evaluation: pair k in component c contributes
// through cos/sin of angles[k] * delta_c. Only meaningful with mixing
// disabled, where it matches the per-token rotation route.
double relative_block_score(std::span<const double> q, std::span<const double> k,
                            const Displacement& delta, const BandAllocation& alloc,
                            const BaseAngles& angles);

}  // namespace sope::oracle
