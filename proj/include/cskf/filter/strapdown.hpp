#pragma once

#include <Eigen/Dense>

#include "cskf/geom/rotation.hpp"
#include "cskf/sim/trajectory.hpp"

namespace cskf::filter {

using Eigen::Vector3d;

/// Kinematic strapdown state: orientation (world->body), position, velocity.
struct KinematicState {
  geom::UnitQuaternion q;
  Vector3d p = Vector3d::Zero();
  Vector3d v = Vector3d::Zero();
};

namespace detail {

// dq/dt for C_bw evolving as Cdot = -skew(omega) C, with q in (x,y,z,w) order.
inline Eigen::Vector4d quat_derivative(const Eigen::Vector4d& q, const Vector3d& omega) {
  Eigen::Quaterniond qq(q(3), q(0), q(1), q(2));
  Eigen::Quaterniond w(0.0, -0.5 * omega.x(), -0.5 * omega.y(), -0.5 * omega.z());
  Eigen::Quaterniond d = w * qq;
  return {d.x(), d.y(), d.z(), d.w()};
}

}  // namespace detail

/// One RK4 step of the IMU kinematics driven by body rates and specific force.
/// `rates(t)` returns (omega_body, specific_force); gravity is added here.
template <typename RateFn>
KinematicState rk4_step(const KinematicState& x0, double t, double dt, RateFn&& rates) {
  using Vec10 = Eigen::Matrix<double, 10, 1>;
  auto pack = [](const Eigen::Vector4d& q, const Vector3d& p, const Vector3d& v) {
    Vec10 y;
    y << q, p, v;
    return y;
  };
  auto deriv = [&](double tau, const Vec10& y) {
    const Eigen::Vector4d q = y.head<4>().normalized();
    auto [omega, accel] = rates(tau);
    const Eigen::Quaterniond qq(q(3), q(0), q(1), q(2));
    Vec10 d;
    d.head<4>() = detail::quat_derivative(q, omega);
    d.segment<3>(4) = y.tail<3>();
    d.tail<3>() = qq.toRotationMatrix().transpose() * accel + sim::kGravity;
    return d;
  };
  const Eigen::Vector4d q0{x0.q.x(), x0.q.y(), x0.q.z(), x0.q.w()};
  const Vec10 y0 = pack(q0, x0.p, x0.v);
  const Vec10 k1 = deriv(t, y0);
  const Vec10 k2 = deriv(t + 0.5 * dt, y0 + 0.5 * dt * k1);
  const Vec10 k3 = deriv(t + 0.5 * dt, y0 + 0.5 * dt * k2);
  const Vec10 k4 = deriv(t + dt, y0 + dt * k3);
  const Vec10 y1 = y0 + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);

  KinematicState out;
  out.q = geom::UnitQuaternion(y1(0), y1(1), y1(2), y1(3));
  out.p = y1.segment<3>(4);
  out.v = y1.tail<3>();
  return out;
}

}  // namespace cskf::filter
