#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace sope {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Error taxonomy. Every throwing path in the library uses one of these, so
// callers (and the CLI exit-code mapping) can tell input problems from
// config problems from broken numeric contracts.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad head dimension or mismatched vector/matrix shape.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Bad scalar argument: base <= 1, negative radius, nonpositive period,
// non-finite coordinate, all-zero ratio.
class ValueError : public Error {
 public:
  using Error::Error;
};

// Band ratio does not divide the available rotation pairs.
class AllocationError : public Error {
 public:
  using Error::Error;
};

// Token or config file cannot be parsed; message carries file:line.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A numeric contract was violated (non-stochastic softmax rows, fully
// masked rows).
class ValidationError : public Error {
 public:
  using Error::Error;
};

enum class Modality { kPointCloud, kText };

// The base-angle ladder: angles[i] = base^(-2i/d) for i in [0, d/2).
// Zero-based, so angles[0] == 1 and the ladder strictly decreases for
// base > 1.
struct BaseAngles {
  int d = 0;
  double base = 0.0;
  std::vector<double> angles;

  int pairs() const { return static_cast<int>(angles.size()); }
  double operator[](int i) const { return angles[static_cast<std::size_t>(i)]; }
};

BaseAngles base_angles(int d, double base = 10000.0);

// A token's four-component positional index, carried in both Cartesian and
// spherical form. Geometry-constructed indices keep the two forms
// consistent (r = |xyz|, theta in [0,pi], phi in (-pi,pi]); tests may fill
// the fields directly since every encoding scheme reads only the
// components it uses.
//
// Text tokens carry (x,y,z) = 0 by convention, so r = theta = phi = 0 and
// only their t-block phases vary.
struct PositionIndex {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  Modality modality = Modality::kPointCloud;
};

struct Displacement {
  double dt = 0.0;
  double dr = 0.0;
  double dtheta = 0.0;
  double dphi = 0.0;
};

// Reduce an angle into (-pi, pi]. Both +pi and -pi map to +pi.
double wrap_angle(double a);

// Component-wise a - b. With wrap_azimuth the dphi component is reduced
// into (-pi, pi]; at the exact seam |dphi| = pi both orientations report
// +pi, so antisymmetry of dphi holds everywhere except that tie.
Displacement displacement(const PositionIndex& a, const PositionIndex& b,
                          bool wrap_azimuth = false);

// Half-open interval of rotation-pair indices.
struct PairRange {
  int begin = 0;
  int end = 0;

  int count() const { return end - begin; }
  bool contains(int k) const { return k >= begin && k < end; }
  bool operator==(const PairRange&) const = default;
};

// Partition of the d/2 rotation pairs into four contiguous component
// sub-bands, ordered spatial-first: r, theta, phi, then t in the
// low-frequency tail. RoPE-3D reuses the three spatial slots as (x, y, z).
struct BandAllocation {
  std::array<int, 4> ratio{};  // (n_t, n_r, n_theta, n_phi)
  PairRange r;
  PairRange theta;
  PairRange phi;
  PairRange t;

  int pairs() const { return t.end; }
};

// ratio is (n_t, n_r, n_theta, n_phi); its sum must divide d/2 exactly.
// Indivisible ratios are an error rather than silently rounded so that
// independent implementations cannot desynchronize.
BandAllocation allocate_bands(const std::array<int, 4>& ratio, int d);

struct Token {
  PositionIndex index;
  std::vector<double> features;
};

enum class Role { kNone, kQuery, kKey };

struct TokenSequence {
  std::vector<Token> tokens;
  Role role = Role::kNone;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

}  // namespace sope
