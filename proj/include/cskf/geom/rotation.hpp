#pragma once

#include <cmath>

#include <Eigen/Dense>

namespace cskf::geom {

using Eigen::Matrix3d;
using Eigen::Vector3d;

inline Matrix3d skew(const Vector3d& v) {
  Matrix3d s;
  s << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return s;
}

inline Matrix3d rot_z(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Matrix3d r;
  r << c, -s, 0, s, c, 0, 0, 0, 1;
  return r;
}

/// Unit quaternion (x, y, z, w). An orientation quaternion q here represents
/// the world frame expressed in the body frame: matrix() maps world
/// coordinates into body coordinates. Error states use the left-multiplicative
/// convention q = dq (x) q_hat with dq ~ (delta/2, 1), so
/// matrix(q) ~ (I + skew(delta)) * matrix(q_hat).
class UnitQuaternion {
 public:
  UnitQuaternion() : q_(1, 0, 0, 0) {}
  UnitQuaternion(double x, double y, double z, double w) : q_(w, x, y, z) {
    q_.normalize();
  }
  explicit UnitQuaternion(const Eigen::Quaterniond& q) : q_(q.normalized()) {}

  static UnitQuaternion identity() { return UnitQuaternion(); }

  static UnitQuaternion from_axis_angle(const Vector3d& theta) {
    const double angle = theta.norm();
    if (angle < 1e-12) {
      Eigen::Quaterniond q(1.0, 0.5 * theta.x(), 0.5 * theta.y(), 0.5 * theta.z());
      return UnitQuaternion(q);
    }
    const Vector3d axis = theta / angle;
    return UnitQuaternion(Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis)));
  }

  double x() const { return q_.x(); }
  double y() const { return q_.y(); }
  double z() const { return q_.z(); }
  double w() const { return q_.w(); }
  const Eigen::Quaterniond& eigen() const { return q_; }

  // Hamilton product; result renormalized.
  UnitQuaternion operator*(const UnitQuaternion& rhs) const {
    return UnitQuaternion(q_ * rhs.q_);
  }

  UnitQuaternion conjugate() const { return UnitQuaternion(q_.conjugate()); }

  Matrix3d matrix() const { return q_.toRotationMatrix(); }

  Vector3d rotate(const Vector3d& v) const { return q_ * v; }

  /// Rotation-vector log; inverse of from_axis_angle for angles < pi.
  Vector3d log() const {
    Eigen::Quaterniond q = q_;
    if (q.w() < 0) q.coeffs() *= -1.0;
    const double vn = q.vec().norm();
    if (vn < 1e-12) return 2.0 * q.vec();
    return 2.0 * std::atan2(vn, q.w()) * q.vec() / vn;
  }

  /// Left-multiplicative retraction: from_axis_angle(delta) (x) *this.
  UnitQuaternion boxplus(const Vector3d& delta) const {
    return from_axis_angle(delta) * *this;
  }

  /// Left-multiplicative difference: boxminus(other).boxplus... satisfies
  /// other.boxplus(delta) == *this for delta = this->boxminus(other).
  Vector3d boxminus(const UnitQuaternion& other) const {
    return (*this * other.conjugate()).log();
  }

 private:
  Eigen::Quaterniond q_;  // Eigen order (w, x, y, z) internally
};

/// Body pose: orientation maps world -> body coordinates, position is the
/// body origin expressed in the world frame.
struct Pose {
  UnitQuaternion orientation;
  Vector3d position = Vector3d::Zero();
};

}  // namespace cskf::geom
