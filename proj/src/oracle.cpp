#include "sope/oracle.hpp"

#include <cmath>
#include <string>

namespace sope::oracle {

DenseRotation build_dense(const RotationPlan& plan) {
  DenseRotation out;
  out.d = plan.d();
  out.m.assign(static_cast<std::size_t>(out.d) * static_cast<std::size_t>(out.d), 0.0);
  for (int i = 0; i < plan.pairs(); ++i) {
    const double c = std::cos(plan.phases[static_cast<std::size_t>(i)]);
    const double s = std::sin(plan.phases[static_cast<std::size_t>(i)]);
    const std::size_t row = static_cast<std::size_t>(2 * i);
    const std::size_t n = static_cast<std::size_t>(out.d);
    out.m[row * n + row] = c;
    out.m[row * n + row + 1] = -s;
    out.m[(row + 1) * n + row] = s;
    out.m[(row + 1) * n + row + 1] = c;
  }
  return out;
}

namespace {

std::vector<double> matvec(const DenseRotation& m, std::span<const double> v) {
  std::vector<double> out(static_cast<std::size_t>(m.d), 0.0);
  for (int i = 0; i < m.d; ++i) {
    double acc = 0.0;
    for (int j = 0; j < m.d; ++j) acc += m.at(i, j) * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

}  // namespace

double dense_score(std::span<const double> q, std::span<const double> k,
                   const RotationPlan& plan_q, const RotationPlan& plan_k) {
  if (q.size() != k.size() || plan_q.d() != plan_k.d() ||
      static_cast<int>(q.size()) != plan_q.d()) {
    throw DimensionError("dense_score: dimensions disagree (q " + std::to_string(q.size()) +
                         ", k " + std::to_string(k.size()) + ", plans " +
                         std::to_string(plan_q.d()) + "/" + std::to_string(plan_k.d()) + ")");
  }
  const std::vector<double> rq = matvec(build_dense(plan_q), q);
  const std::vector<double> rk = matvec(build_dense(plan_k), k);
  double acc = 0.0;
  for (std::size_t i = 0; i < rq.size(); ++i) acc += rq[i] * rk[i];
  return acc;
}

namespace {

double block_contribution(std::span<const double> q, std::span<const double> k,
                          const PairRange& range, double delta, const BaseAngles& angles) {
  double acc = 0.0;
  for (int p = range.begin; p < range.end; ++p) {
    const double c = std::cos(angles[p] * delta);
    const double s = std::sin(angles[p] * delta);
    const std::size_t i = static_cast<std::size_t>(2 * p);
    // q^T R(delta) k for one 2x2 block.
    acc += c * (q[i] * k[i] + q[i + 1] * k[i + 1]) + s * (q[i + 1] * k[i] - q[i] * k[i + 1]);
  }
  return acc;
}

}  // namespace

double relative_block_score(std::span<const double> q, std::span<const double> k,
                            const Displacement& delta, const BandAllocation& alloc,
                            const BaseAngles& angles) {
  if (q.size() != k.size() || static_cast<int>(q.size()) != angles.d ||
      alloc.pairs() != angles.pairs()) {
    throw DimensionError("relative_block_score: dimensions disagree");
  }
  return block_contribution(q, k, alloc.r, delta.dr, angles) +
         block_contribution(q, k, alloc.theta, delta.dtheta, angles) +
         block_contribution(q, k, alloc.phi, delta.dphi, angles) +
         block_contribution(q, k, alloc.t, delta.dt, angles);
}

}  // namespace sope::oracle
