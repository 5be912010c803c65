#pragma once

#include <span>

#include <Eigen/Dense>

#include "cskf/geom/rotation.hpp"
#include "cskf/sim/session.hpp"

namespace cskf::mapping {

using Eigen::Matrix3d;
using Eigen::Vector3d;

/// IMU increments over one camera interval, integrated in the frame of the
/// interval's first pose: delta_q is the rotation mapping that frame into the
/// interval's end frame, alpha the double-integrated specific force, and cov
/// the 6x6 covariance of (rotation error, alpha error) from the gyro/accel
/// white-noise densities.
struct ImuPreintegral {
  double dt_total = 0;
  geom::UnitQuaternion delta_q;
  Vector3d alpha = Vector3d::Zero();
  Vector3d beta = Vector3d::Zero();
  Eigen::Matrix<double, 6, 6> cov = Eigen::Matrix<double, 6, 6>::Zero();
};

/// Zero-bias preintegration of samples covering [t0, t1] (zero-order hold).
inline ImuPreintegral preintegrate(std::span<const sim::ImuSample> samples, double t0,
                                   double t1, const sim::NoiseConfig& noise) {
  ImuPreintegral out;
  out.dt_total = t1 - t0;
  Matrix3d dc = Matrix3d::Identity();  // frame(t) <- frame(t0)
  Eigen::Matrix<double, 9, 9> p = Eigen::Matrix<double, 9, 9>::Zero();  // (theta, beta, alpha)

  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    if (samples[k + 1].t <= t0 || samples[k].t >= t1) continue;
    const double dt = std::min(samples[k + 1].t, t1) - std::max(samples[k].t, t0);
    if (dt <= 0) continue;
    const Vector3d w = samples[k].gyro;
    const Vector3d a = samples[k].accel;

    // error propagation, first order
    Eigen::Matrix<double, 9, 9> f = Eigen::Matrix<double, 9, 9>::Identity();
    const Matrix3d step = geom::UnitQuaternion::from_axis_angle(-w * dt).matrix();
    f.block<3, 3>(0, 0) = step;
    f.block<3, 3>(3, 0) = dt * dc.transpose() * geom::skew(a);
    f.block<3, 3>(6, 3) = dt * Matrix3d::Identity();
    Eigen::Matrix<double, 9, 9> q = Eigen::Matrix<double, 9, 9>::Zero();
    q.block<3, 3>(0, 0) =
        noise.gyro_noise * noise.gyro_noise * dt * Matrix3d::Identity();
    q.block<3, 3>(3, 3) =
        noise.accel_noise * noise.accel_noise * dt * Matrix3d::Identity();
    p = f * p * f.transpose() + q;

    // state integration
    out.alpha += out.beta * dt + 0.5 * dt * dt * (dc.transpose() * a);
    out.beta += dc.transpose() * a * dt;
    dc = step * dc;
  }
  out.delta_q = geom::UnitQuaternion(Eigen::Quaterniond(dc));
  out.cov.topLeftCorner<3, 3>() = p.topLeftCorner<3, 3>();
  out.cov.topRightCorner<3, 3>() = p.block<3, 3>(0, 6);
  out.cov.bottomLeftCorner<3, 3>() = p.block<3, 3>(6, 0);
  out.cov.bottomRightCorner<3, 3>() = p.block<3, 3>(6, 6);
  // keep the information matrix finite on noise-free sessions
  out.cov += 1e-14 * Eigen::Matrix<double, 6, 6>::Identity();
  return out;
}

}  // namespace cskf::mapping
