#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cskf/errors.hpp"
#include "cskf/geom/camera.hpp"
#include "cskf/sim/trajectory.hpp"
#include "cskf/sim/world.hpp"

namespace cskf::sim {

struct NoiseConfig {
  double gyro_noise = 1e-3;   // rad/s/sqrt(Hz)
  double accel_noise = 1e-2;  // m/s^2/sqrt(Hz)
  double gyro_walk = 1e-5;    // rad/s*sqrt(Hz), bias random walk
  double accel_walk = 1e-4;
  double pixel_sigma = 1.0;   // pixels
  double outlier_rate = 0.0;  // uniform-in-image replacement probability

  static NoiseConfig noise_free() { return {0, 0, 0, 0, 0, 0}; }
};

struct ImuSample {
  double t;
  Vector3d gyro;
  Vector3d accel;
};

struct FeatureObservation {
  double t;
  long feature_id;
  Eigen::Vector2d px;
  bool is_outlier;  // simulator-only ground truth
};

struct TruthState {
  double t;
  geom::Pose pose;
  Vector3d velocity;
  Vector3d gyro_bias;
  Vector3d accel_bias;
};

struct Session {
  TrajectorySpec spec;
  geom::CameraModel camera;
  NoiseConfig noise;
  std::uint64_t seed = 0;
  std::vector<TruthState> truth;                         // at IMU times
  std::vector<ImuSample> imu;                            // at IMU times
  std::vector<double> frame_times;                       // camera frames
  std::vector<std::vector<FeatureObservation>> frames;   // per camera frame

  const TruthState& truth_at_frame(std::size_t frame) const {
    const auto ratio = static_cast<std::size_t>(spec.imu_rate / spec.cam_rate);
    return truth.at(frame * ratio);
  }
};

/// Generates one seeded, byte-reproducible session: ground-truth states at
/// IMU rate, noisy IMU samples, and per-frame feature observations (inlier
/// pixel noise ~ N(0, sigma^2 I), outliers uniform in the image).
inline Session generate_session(const TrajectorySpec& spec, const WorldFeatures& world,
                                const geom::CameraModel& camera, const NoiseConfig& noise,
                                std::uint64_t seed) {
  if (world.points.empty()) throw ConfigError("generate_session: empty world");
  if (spec.duration <= 0) throw ConfigError("generate_session: zero duration");
  const double ratio = spec.imu_rate / spec.cam_rate;
  if (std::abs(ratio - std::round(ratio)) > 1e-9)
    throw ConfigError("generate_session: cam rate must divide imu rate");
  world.check(spec.room_min, spec.room_max);

  Trajectory traj(spec);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto gauss3 = [&]() { return Vector3d(gauss(rng), gauss(rng), gauss(rng)); };

  Session s;
  s.spec = spec;
  s.camera = camera;
  s.noise = noise;
  s.seed = seed;

  const double dt = 1.0 / spec.imu_rate;
  const auto n_imu = static_cast<std::size_t>(std::llround(spec.duration * spec.imu_rate));
  const auto cam_every = static_cast<std::size_t>(std::llround(ratio));

  Vector3d bg = Vector3d::Zero(), ba = Vector3d::Zero();
  const double sg = noise.gyro_noise / std::sqrt(dt);
  const double sa = noise.accel_noise / std::sqrt(dt);
  const double wg = noise.gyro_walk * std::sqrt(dt);
  const double wa = noise.accel_walk * std::sqrt(dt);

  for (std::size_t k = 0; k <= n_imu; ++k) {
    const double t = k * dt;
    const TrueState ts = traj.at(t);
    s.truth.push_back({t, ts.pose, ts.velocity, bg, ba});

    Vector3d gyro, accel;
    traj.true_rates(t, gyro, accel);
    s.imu.push_back({t, gyro + bg + sg * gauss3(), accel + ba + sa * gauss3()});
    bg += wg * gauss3();
    ba += wa * gauss3();

    if (k % cam_every == 0) {
      s.frame_times.push_back(t);
      std::vector<FeatureObservation> obs;
      for (const auto& f : world.points) {
        const Vector3d p_cam = ts.pose.orientation.matrix() * (f.position - ts.pose.position);
        if (p_cam.z() <= geom::kMinDepth) continue;
        if ((f.position - ts.pose.position).norm() > world.visibility_radius) continue;
        const Eigen::Vector2d exact = camera.project(p_cam);
        if (!camera.in_image(exact)) continue;
        FeatureObservation o;
        o.t = t;
        o.feature_id = f.id;
        if (noise.outlier_rate > 0 && u01(rng) < noise.outlier_rate) {
          o.px = {u01(rng) * camera.width, u01(rng) * camera.height};
          o.is_outlier = true;
        } else {
          o.px = exact + noise.pixel_sigma * Eigen::Vector2d(gauss(rng), gauss(rng));
          o.is_outlier = false;
        }
        obs.push_back(o);
      }
      s.frames.push_back(std::move(obs));
    }
  }
  return s;
}

// --- CSV dump (imu.csv, obs.csv, truth.csv) -------------------------------

namespace csv_detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace csv_detail

inline void dump_session_csv(const Session& s, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  using csv_detail::fmt;
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "imu.csv");
    f << "t,gx,gy,gz,ax,ay,az\n";
    for (const auto& m : s.imu)
      f << fmt(m.t) << ',' << fmt(m.gyro.x()) << ',' << fmt(m.gyro.y()) << ','
        << fmt(m.gyro.z()) << ',' << fmt(m.accel.x()) << ',' << fmt(m.accel.y()) << ','
        << fmt(m.accel.z()) << '\n';
  }
  {
    std::ofstream f(dir / "obs.csv");
    f << "t,feature_id,u,v,is_outlier\n";
    for (const auto& frame : s.frames)
      for (const auto& o : frame)
        f << fmt(o.t) << ',' << o.feature_id << ',' << fmt(o.px.x()) << ','
          << fmt(o.px.y()) << ',' << (o.is_outlier ? 1 : 0) << '\n';
  }
  {
    std::ofstream f(dir / "truth.csv");
    f << "t,qx,qy,qz,qw,px,py,pz,vx,vy,vz\n";
    for (const auto& ts : s.truth) {
      const auto& q = ts.pose.orientation;
      f << fmt(ts.t) << ',' << fmt(q.x()) << ',' << fmt(q.y()) << ',' << fmt(q.z()) << ','
        << fmt(q.w()) << ',' << fmt(ts.pose.position.x()) << ','
        << fmt(ts.pose.position.y()) << ',' << fmt(ts.pose.position.z()) << ','
        << fmt(ts.velocity.x()) << ',' << fmt(ts.velocity.y()) << ','
        << fmt(ts.velocity.z()) << '\n';
    }
  }
}

}  // namespace cskf::sim
