#include "twirlsim/rotations.hpp"

#include <cmath>

namespace twirlsim {

AxisAngle AxisAngle::from_spherical(double xi, double theta, double phi) {
  return AxisAngle{xi, Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                            std::cos(theta))};
}

Unitary Unitary::from_matrix(const Mat2& m, RotationProvenance provenance) {
  if ((m * m.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("matrix is not unitary");
  const cd root = std::sqrt(m.determinant());
  return Unitary(m / root, std::move(provenance));
}

Unitary Unitary::adjoint() const { return Unitary(m_.adjoint(), Composed{}); }

Unitary Unitary::then(const Unitary& next) const {
  return Unitary(next.m_ * m_, Composed{});
}

double Unitary::unitarity_residual() const {
  return (m_ * m_.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff();
}

double Unitary::det_residual() const { return std::abs(m_.determinant() - cd(1.0)); }

Unitary axis_angle_unitary(const AxisAngle& a) {
  if (std::abs(a.axis.norm() - 1.0) > 1e-12) throw DomainError("rotation axis is not a unit vector");
  const double c = std::cos(a.xi / 2.0);
  const double s = std::sin(a.xi / 2.0);
  const cd i(0.0, 1.0);
  Mat2 m;
  // cos(xi/2) 1 - i sin(xi/2) (n.sigma)
  m(0, 0) = cd(c, -s * a.axis.z());
  m(0, 1) = -i * s * cd(a.axis.x(), -a.axis.y());
  m(1, 0) = -i * s * cd(a.axis.x(), a.axis.y());
  m(1, 1) = cd(c, s * a.axis.z());
  return Unitary::from_matrix(m, a);
}

Unitary rotation_x(double angle) { return axis_angle_unitary({angle, Vec3::UnitX()}); }
Unitary rotation_y(double angle) { return axis_angle_unitary({angle, Vec3::UnitY()}); }
Unitary rotation_z(double angle) { return axis_angle_unitary({angle, Vec3::UnitZ()}); }

Unitary euler_unitary(const EulerTriple& e) {
  const Mat2 m = rotation_z(e.xi).matrix() * rotation_y(e.theta).matrix() *
                 rotation_z(e.phi).matrix();
  return Unitary::from_matrix(m, e);
}

Mat4 bilateral(const Mat2& u) { return tensor(u, u); }
Mat4 bilateral(const Unitary& u) { return bilateral(u.matrix()); }

Unitary sequence(std::initializer_list<Unitary> in_time_order) {
  Mat2 m = Mat2::Identity();
  for (const Unitary& u : in_time_order) m = u.matrix() * m;
  return Unitary::from_matrix(m);
}

double magic_angle() { return std::acos(1.0 / std::sqrt(3.0)); }

Eigen::Matrix4d pauli_transfer(const Mat2& u) {
  std::array<Mat2, 4> p = {pauli(0), pauli(1), pauli(2), pauli(3)};
  const Mat2 ud = u.adjoint();
  Eigen::Matrix4d r;
  for (int b = 0; b < 4; ++b) {
    const Mat2 image = u * p[b] * ud;
    for (int a = 0; a < 4; ++a) r(a, b) = 0.5 * (p[a] * image).trace().real();
  }
  return r;
}

double channel_distance(const Mat2& a, const Mat2& b) {
  return (pauli_transfer(a) - pauli_transfer(b)).cwiseAbs().maxCoeff();
}

}  // namespace twirlsim
