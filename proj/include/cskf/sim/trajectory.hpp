#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cskf/errors.hpp"
#include "cskf/geom/rotation.hpp"

namespace cskf::sim {

using Eigen::Vector3d;

inline const Vector3d kGravity{0.0, 0.0, -9.81};

enum class TrajectoryKind { lissajous, waypoint_spline, circle };

struct TrajectorySpec {
  TrajectoryKind kind = TrajectoryKind::lissajous;
  Vector3d room_min{-4.0, -3.0, 0.0};
  Vector3d room_max{4.0, 3.0, 2.5};
  double duration = 40.0;   // seconds
  double imu_rate = 200.0;  // Hz
  double cam_rate = 10.0;   // Hz
  int revisit_count = 2;    // times the path re-covers the same scene
  double motion_scale = 1.0;   // fraction of the nominal excursion amplitudes
  double yaw_amplitude = 2.6;  // radians swept by the optical axis
  unsigned waypoint_seed = 7;  // control-point draw for waypoint_spline
  int waypoint_count = 6;
};

/// Kinematic sample of the true trajectory.
struct TrueState {
  geom::Pose pose;          // orientation: world->body, position in world
  Vector3d velocity;        // world frame
  Vector3d accel_world;     // second derivative of position
  Vector3d omega_body;      // body-frame angular velocity
};

/// Analytic, C2-smooth trajectories inside a room: a Lissajous weave or a
/// closed cubic B-spline over random waypoints, both traversed revisit_count
/// times so the same scene is seen repeatedly. Orientation follows smooth
/// yaw/pitch/roll sinusoids with the optical (+z body) axis held mostly
/// horizontal so wall features stay in view.
class Trajectory {
 public:
  explicit Trajectory(const TrajectorySpec& spec) : spec_(spec) {
    if (spec.duration <= 0) throw ConfigError("trajectory: duration must be positive");
    if (spec.revisit_count < 1) throw ConfigError("trajectory: revisit_count >= 1");
    center_ = 0.5 * (spec.room_min + spec.room_max);
    half_ = 0.5 * (spec.room_max - spec.room_min);
    base_omega_ = 2.0 * std::numbers::pi * spec.revisit_count / spec.duration;
    if (spec.kind == TrajectoryKind::waypoint_spline) {
      std::mt19937_64 rng(spec.waypoint_seed);
      std::uniform_real_distribution<double> u(-0.55, 0.55);
      for (int i = 0; i < spec.waypoint_count; ++i)
        waypoints_.push_back(center_ + spec_.motion_scale *
                                           Vector3d(u(rng) * 2 * half_.x(),
                                                    u(rng) * 2 * half_.y(),
                                                    0.4 * u(rng) * 2 * half_.z()));
    }
    // angular-rate budget: amplitudes * frequencies must stay below 2 rad/s,
    // so orientation amplitudes shrink for fast-revisit or short sessions
    const double max_rate = spec.yaw_amplitude * base_omega_ +
                            kPitchAmp * 2 * base_omega_ + kRollAmp * 3 * base_omega_;
    angle_scale_ = max_rate > 1.8 ? 1.8 / max_rate : 1.0;
  }

  const TrajectorySpec& spec() const { return spec_; }

  TrueState at(double t) const {
    TrueState s;
    Vector3d p, v, a;
    position(t, p, v, a);
    double angles[3], rates[3];
    euler_angles(t, angles, rates);
    const double psi = angles[0], theta = angles[1], phi = angles[2];

    // body->world: Rz(psi) Ry(theta) Rx(phi)
    const Eigen::Matrix3d r_wb = geom::rot_z(psi) * rot_y(theta) * rot_x(phi);
    s.pose.orientation = geom::UnitQuaternion(Eigen::Quaterniond(r_wb.transpose()));
    s.pose.position = p;
    s.velocity = v;
    s.accel_world = a;
    // omega = psi_dot Rx^T Ry^T e_z + theta_dot Rx^T e_y + phi_dot e_x
    s.omega_body = rates[0] * (rot_x(phi).transpose() * rot_y(theta).transpose() *
                               Vector3d::UnitZ()) +
                   rates[1] * (rot_x(phi).transpose() * Vector3d::UnitY()) +
                   rates[2] * Vector3d::UnitX();
    return s;
  }

  /// True body-frame angular velocity and specific force at time t:
  /// gyro = omega_body, accel = C_wb^T (a_world - g).
  void true_rates(double t, Vector3d& gyro, Vector3d& accel) const {
    const TrueState s = at(t);
    gyro = s.omega_body;
    accel = s.pose.orientation.matrix() * (s.accel_world - kGravity);
  }

 private:
  static constexpr double kPitchAmp = 0.18;
  static constexpr double kRollAmp = 0.12;
  static constexpr double kPitchBase = 1.25;  // optical axis ~17 deg above horizon

  static Eigen::Matrix3d rot_y(double a) {
    Eigen::Matrix3d r;
    r << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
    return r;
  }
  static Eigen::Matrix3d rot_x(double a) {
    Eigen::Matrix3d r;
    r << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
    return r;
  }

  void position(double t, Vector3d& p, Vector3d& v, Vector3d& a) const {
    if (spec_.kind == TrajectoryKind::circle) {
      const double r = spec_.motion_scale * 0.7 * half_.x();
      const double w = base_omega_;
      p = center_ + r * Vector3d(std::sin(w * t), std::cos(w * t), 0.0);
      v = r * w * Vector3d(std::cos(w * t), -std::sin(w * t), 0.0);
      a = -r * w * w * Vector3d(std::sin(w * t), std::cos(w * t), 0.0);
      return;
    }
    if (spec_.kind == TrajectoryKind::lissajous) {
      const Vector3d amp = spec_.motion_scale *
                           Vector3d(0.7 * half_.x(), 0.7 * half_.y(), 0.25 * half_.z());
      const double w1 = base_omega_, w2 = 2 * base_omega_, w3 = 3 * base_omega_;
      p = center_ + Vector3d(amp.x() * std::sin(w1 * t),
                             amp.y() * std::sin(w2 * t + 0.4),
                             amp.z() * std::sin(w3 * t + 1.1));
      v = Vector3d(amp.x() * w1 * std::cos(w1 * t), amp.y() * w2 * std::cos(w2 * t + 0.4),
                   amp.z() * w3 * std::cos(w3 * t + 1.1));
      a = Vector3d(-amp.x() * w1 * w1 * std::sin(w1 * t),
                   -amp.y() * w2 * w2 * std::sin(w2 * t + 0.4),
                   -amp.z() * w3 * w3 * std::sin(w3 * t + 1.1));
      return;
    }
    // closed uniform cubic B-spline, traversed revisit_count times
    const int n = static_cast<int>(waypoints_.size());
    const double u_rate = n * spec_.revisit_count / spec_.duration;
    double u = std::fmod(t * u_rate, static_cast<double>(n));
    if (u < 0) u += n;
    const int i = static_cast<int>(std::floor(u));
    const double s = u - i;
    auto cp = [&](int k) { return waypoints_[((i + k) % n + n) % n]; };
    const Vector3d c0 = cp(-1), c1 = cp(0), c2 = cp(1), c3 = cp(2);
    const double s2 = s * s, s3 = s2 * s;
    p = ((1 - 3 * s + 3 * s2 - s3) * c0 + (4 - 6 * s2 + 3 * s3) * c1 +
         (1 + 3 * s + 3 * s2 - 3 * s3) * c2 + s3 * c3) /
        6.0;
    const Vector3d dp_ds = ((-3 + 6 * s - 3 * s2) * c0 + (-12 * s + 9 * s2) * c1 +
                            (3 + 6 * s - 9 * s2) * c2 + 3 * s2 * c3) /
                           6.0;
    const Vector3d d2p_ds2 =
        ((6 - 6 * s) * c0 + (-12 + 18 * s) * c1 + (6 - 18 * s) * c2 + 6 * s * c3) / 6.0;
    v = dp_ds * u_rate;
    a = d2p_ds2 * u_rate * u_rate;
  }

  void euler_angles(double t, double angles[3], double rates[3]) const {
    const double wy = base_omega_, wp = 2 * base_omega_, wr = 3 * base_omega_;
    const double m = spec_.motion_scale * angle_scale_;
    angles[0] = m * spec_.yaw_amplitude * std::sin(wy * t + 0.7);
    angles[1] = kPitchBase + m * kPitchAmp * std::sin(wp * t);
    angles[2] = m * kRollAmp * std::sin(wr * t + 0.3);
    rates[0] = m * spec_.yaw_amplitude * wy * std::cos(wy * t + 0.7);
    rates[1] = m * kPitchAmp * wp * std::cos(wp * t);
    rates[2] = m * kRollAmp * wr * std::cos(wr * t + 0.3);
  }

  TrajectorySpec spec_;
  Vector3d center_, half_;
  double base_omega_;
  double angle_scale_ = 1.0;
  std::vector<Vector3d> waypoints_;
};

}  // namespace cskf::sim
