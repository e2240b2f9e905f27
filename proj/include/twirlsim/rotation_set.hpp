#pragma once

// Named averaging sets: discrete lists of rotations or continuous
// distributions with a sampling plan.
//
// Canonical text form (used by the CLI):
//
//   random-axis | euler | two-axis | pauli4 | axis120 | axis-fixed:<deg>
//   cyclic:<p>:<axis> | continuous:<axis> | bennett12 | discrete27
//   discrete18a | discrete18b | gradient-sequence[:<stages>]
//
// followed, for continuous sets, by an optional sampling plan
// `:quad:<n>` (default n = 64) or `:mc:<n>:seed=<s>`. An axis is `x`,
// `y`, `z` or a comma-separated vector such as `1,1,1`.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twirlsim/rotations.hpp"

namespace twirlsim {

/// Misuse of an API: wrong spec kind for the operation, malformed spec text.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SetVariant {
  random_axis,          // R: uniform angle about a spherical-uniform axis
  euler,                // E: Euler angles with Haar-distributed tilt
  two_axis_zy,          // R_z(phi) R_y(theta), both angles uniform on [0, 2pi)
  pauli4,               // {1, X, Y, Z}
  axis120,              // 120 degrees about a random axis
  fixed_angle,          // fixed angle about a random axis
  cyclic,               // C_p about a fixed axis
  continuous_axis,      // uniform angle about a fixed axis
  bennett12,            // rotational symmetries of the tetrahedron
  discrete27,           // {Z3} 90x {Z3} magic_x {Z3}
  discrete18a,          // {Z2} 90x {Z3} magic_x {Z3}
  discrete18b,          // {Z3} 90x {Z2} magic_x {Z3}
  gradient_sequence,    // G 90x G [magic_x G] with uniform z angles
};

enum class SamplingKind { exact, quadrature, monte_carlo };

struct SamplingPlan {
  SamplingKind kind = SamplingKind::quadrature;
  std::size_t n = 64;  // quadrature points per angle, or Monte Carlo draws
  std::uint64_t seed = 0;
};

struct RotationSetSpec {
  SetVariant variant = SetVariant::bennett12;
  SamplingPlan sampling{SamplingKind::exact, 0, 0};
  int cyclic_order = 3;
  Vec3 axis = Vec3::UnitZ();
  std::string axis_text = "z";
  double fixed_angle = 0.0;  // radians
  int gradient_stages = 2;

  bool is_discrete() const;

  static RotationSetSpec make(SetVariant variant);
  static RotationSetSpec cyclic(int p, char axis = 'z');
  static RotationSetSpec continuous_about(char axis);
  static RotationSetSpec fixed_angle_random_axis(double radians);
  static RotationSetSpec gradient(int stages);

  RotationSetSpec with_quadrature(std::size_t n) const;
  RotationSetSpec with_monte_carlo(std::size_t n, std::uint64_t seed) const;

  /// Throws UsageError with a description of what failed to parse.
  static RotationSetSpec parse(std::string_view text);
  std::string to_string() const;
};

struct WeightedUnitary {
  double weight = 0.0;
  Mat2 u = Mat2::Identity();
};

/// The elements of a discrete set, uniform weights. Throws UsageError
/// for a continuous spec.
std::vector<WeightedUnitary> enumerate(const RotationSetSpec& spec);

/// One draw from a continuous set. Throws UsageError for a discrete spec.
Unitary sample(const RotationSetSpec& spec, std::mt19937_64& rng);

/// Weighted elements realizing the spec: the enumeration for discrete sets,
/// the tensor-product quadrature or Monte Carlo draws for continuous ones.
/// Weights sum to one.
std::vector<WeightedUnitary> realize(const RotationSetSpec& spec);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(std::size_t n);

}  // namespace twirlsim
