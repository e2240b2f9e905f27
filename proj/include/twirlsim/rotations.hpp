#pragma once

// SU(2) rotations. A written sequence "A B" means A acts first, so the
// matrix of the sequence is U_B * U_A. Unitaries are normalized to
// det(U) = 1 and compared only through their action on density matrices.

#include <variant>

#include "twirlsim/core.hpp"

namespace twirlsim {

using Vec3 = Eigen::Vector3d;

struct AxisAngle {
  double xi = 0.0;  // rotation angle, radians
  Vec3 axis = Vec3::UnitZ();

  /// Axis from tilt theta (from +z) and azimuth phi.
  static AxisAngle from_spherical(double xi, double theta, double phi);
};

/// R_z(phi) then R_y(theta) then R_z(xi), in time order.
struct EulerTriple {
  double phi = 0.0;
  double theta = 0.0;
  double xi = 0.0;
};

/// Marks a unitary built by composing other rotations.
struct Composed {};

using RotationProvenance = std::variant<AxisAngle, EulerTriple, Composed>;

class Unitary {
 public:
  Unitary() : m_(Mat2::Identity()), provenance_(AxisAngle{}) {}

  /// Normalizes det to 1. Throws DomainError if m is not unitary to 1e-12.
  static Unitary from_matrix(const Mat2& m, RotationProvenance provenance = Composed{});

  const Mat2& matrix() const { return m_; }
  const RotationProvenance& provenance() const { return provenance_; }

  Unitary adjoint() const;
  /// this acts first, then `next`.
  Unitary then(const Unitary& next) const;

  Mat2 conjugate(const Mat2& rho) const { return m_ * rho * m_.adjoint(); }

  double unitarity_residual() const;
  double det_residual() const;

 private:
  Unitary(const Mat2& m, RotationProvenance p) : m_(m), provenance_(std::move(p)) {}
  Mat2 m_;
  RotationProvenance provenance_;
};

/// exp(-i xi (n.sigma)/2). Throws DomainError for a non-unit axis.
Unitary axis_angle_unitary(const AxisAngle& a);
Unitary euler_unitary(const EulerTriple& e);

Unitary rotation_x(double angle);
Unitary rotation_y(double angle);
Unitary rotation_z(double angle);

/// u (x) u
Mat4 bilateral(const Unitary& u);
Mat4 bilateral(const Mat2& u);

/// Composes a time-ordered list of rotations.
Unitary sequence(std::initializer_list<Unitary> in_time_order);

/// arccos(1/sqrt 3)
double magic_angle();

inline double degrees_to_radians(double deg) { return deg * kPi / 180.0; }
inline double radians_to_degrees(double rad) { return rad * 180.0 / kPi; }

/// Single-qubit Pauli transfer matrix R_ab = Tr(sigma_a U sigma_b U^dag)/2.
Eigen::Matrix4d pauli_transfer(const Mat2& u);

/// Max entry difference between the channels rho -> U rho U^dag.
double channel_distance(const Mat2& a, const Mat2& b);

}  // namespace twirlsim
