#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cskf/filter/strapdown.hpp"
#include "cskf/sim/session.hpp"
#include "cskf/sim/trajectory.hpp"
#include "cskf/sim/world.hpp"

using namespace cskf;
using namespace cskf::sim;
using Eigen::Vector2d;
using Eigen::Vector3d;

namespace {

TrajectorySpec small_spec() {
  TrajectorySpec spec;
  spec.duration = 10.0;
  spec.revisit_count = 1;
  return spec;
}

}  // namespace

TEST_CASE("static hover: zero gyro, accelerometer reads rotated gravity") {
  TrajectorySpec spec = small_spec();
  spec.motion_scale = 0.0;
  Trajectory traj(spec);
  Vector3d gyro, accel;
  traj.true_rates(3.7, gyro, accel);
  REQUIRE(gyro.norm() < 1e-14);
  const Vector3d expected = traj.at(3.7).pose.orientation.matrix() * Vector3d(0, 0, 9.81);
  REQUIRE((accel - expected).norm() < 1e-12);
  REQUIRE(accel.norm() == Catch::Approx(9.81));
}

TEST_CASE("uniform circular motion has centripetal acceleration w^2 r") {
  TrajectorySpec spec = small_spec();
  spec.kind = TrajectoryKind::circle;
  spec.duration = 20.0;
  Trajectory traj(spec);
  const double w = 2.0 * std::numbers::pi * spec.revisit_count / spec.duration;
  const double r = 0.7 * 0.5 * (spec.room_max.x() - spec.room_min.x());
  for (double t : {0.3, 5.1, 12.9}) {
    const TrueState s = traj.at(t);
    REQUIRE(s.accel_world.norm() == Catch::Approx(w * w * r).epsilon(1e-10));
    REQUIRE(s.velocity.norm() == Catch::Approx(w * r).epsilon(1e-10));
  }
}

TEST_CASE("integrating true rates with fine-step RK4 recovers ground truth") {
  TrajectorySpec spec = small_spec();
  spec.revisit_count = 2;
  Trajectory traj(spec);

  filter::KinematicState x;
  const TrueState s0 = traj.at(0.0);
  x.q = s0.pose.orientation;
  x.p = s0.pose.position;
  x.v = s0.velocity;

  const double dt = 5e-4;
  const int steps = static_cast<int>(10.0 / dt);
  auto rates = [&](double tau) {
    Vector3d g, a;
    traj.true_rates(tau, g, a);
    return std::pair{g, a};
  };
  for (int k = 0; k < steps; ++k) x = filter::rk4_step(x, k * dt, dt, rates);

  const TrueState sf = traj.at(10.0);
  REQUIRE((x.p - sf.pose.position).norm() < 1e-6);
  REQUIRE((x.v - sf.velocity).norm() < 1e-6);
  REQUIRE(x.q.boxminus(sf.pose.orientation).norm() < 1e-6);
}

TEST_CASE("trajectory stays inside room bounds") {
  for (auto kind : {TrajectoryKind::lissajous, TrajectoryKind::waypoint_spline}) {
    TrajectorySpec spec = small_spec();
    spec.kind = kind;
    spec.duration = 30.0;
    spec.revisit_count = 2;
    Trajectory traj(spec);
    for (int i = 0; i <= 3000; ++i) {
      const Vector3d p = traj.at(i * 0.01).pose.position;
      for (int k = 0; k < 3; ++k) {
        REQUIRE(p[k] >= spec.room_min[k]);
        REQUIRE(p[k] <= spec.room_max[k]);
      }
    }
  }
}

TEST_CASE("angular rates stay below 2 rad/s") {
  TrajectorySpec spec = small_spec();
  spec.duration = 30.0;
  spec.revisit_count = 3;
  Trajectory traj(spec);
  for (int i = 0; i <= 3000; ++i)
    REQUIRE(traj.at(i * 0.01).omega_body.norm() < 2.0);
}

TEST_CASE("noise-free session observations equal exact projections") {
  TrajectorySpec spec = small_spec();
  auto world = make_room_world(spec.room_min, spec.room_max, 120, 5);
  geom::CameraModel cam;
  auto s = generate_session(spec, world, cam, NoiseConfig::noise_free(), 99);
  REQUIRE(s.frames.size() == 101);  // 10 s at 10 Hz inclusive
  int total = 0;
  for (std::size_t f = 0; f < s.frames.size(); ++f) {
    const auto& truth = s.truth_at_frame(f);
    for (const auto& o : s.frames[f]) {
      const Vector3d p_cam = truth.pose.orientation.matrix() *
                             (world.points[o.feature_id].position - truth.pose.position);
      REQUIRE((o.px - cam.project(p_cam)).norm() < 1e-12);
      ++total;
    }
  }
  REQUIRE(total > 1000);  // the world is actually visible
}

TEST_CASE("same seed reproduces identical streams") {
  TrajectorySpec spec = small_spec();
  auto world = make_room_world(spec.room_min, spec.room_max, 40, 5);
  geom::CameraModel cam;
  NoiseConfig noise;
  noise.outlier_rate = 0.05;
  auto a = generate_session(spec, world, cam, noise, 1234);
  auto b = generate_session(spec, world, cam, noise, 1234);
  REQUIRE(a.imu.size() == b.imu.size());
  for (std::size_t i = 0; i < a.imu.size(); ++i) {
    REQUIRE(a.imu[i].gyro == b.imu[i].gyro);
    REQUIRE(a.imu[i].accel == b.imu[i].accel);
  }
  REQUIRE(a.frames.size() == b.frames.size());
  for (std::size_t f = 0; f < a.frames.size(); ++f) {
    REQUIRE(a.frames[f].size() == b.frames[f].size());
    for (std::size_t i = 0; i < a.frames[f].size(); ++i) {
      REQUIRE(a.frames[f][i].px == b.frames[f][i].px);
      REQUIRE(a.frames[f][i].feature_id == b.frames[f][i].feature_id);
    }
  }
}

TEST_CASE("outlier counts follow the binomial bound") {
  TrajectorySpec spec = small_spec();
  spec.duration = 60.0;
  auto world = make_room_world(spec.room_min, spec.room_max, 200, 5);
  geom::CameraModel cam;
  NoiseConfig noise;
  noise.outlier_rate = 0.1;
  auto s = generate_session(spec, world, cam, noise, 777);
  long n = 0, outliers = 0;
  for (const auto& frame : s.frames)
    for (const auto& o : frame) {
      ++n;
      outliers += o.is_outlier ? 1 : 0;
    }
  REQUIRE(n >= 10000);
  const double p = noise.outlier_rate;
  const double bound = 3.0 * std::sqrt(n * p * (1 - p));
  REQUIRE(std::abs(outliers - n * p) <= bound);
}

TEST_CASE("empirical pixel noise covariance matches configuration within 5%") {
  TrajectorySpec spec = small_spec();
  spec.duration = 120.0;
  spec.revisit_count = 2;
  auto world = make_room_world(spec.room_min, spec.room_max, 400, 5);
  geom::CameraModel cam;
  NoiseConfig noise;
  noise.pixel_sigma = 1.5;
  auto s = generate_session(spec, world, cam, noise, 4242);
  double sum_sq = 0;
  long n = 0;
  for (std::size_t f = 0; f < s.frames.size(); ++f) {
    const auto& truth = s.truth_at_frame(f);
    for (const auto& o : s.frames[f]) {
      const Vector3d p_cam = truth.pose.orientation.matrix() *
                             (world.points[o.feature_id].position - truth.pose.position);
      sum_sq += (o.px - cam.project(p_cam)).squaredNorm();
      n += 2;
    }
  }
  REQUIRE(n >= 100000);
  const double var = sum_sq / n;
  REQUIRE(var == Catch::Approx(noise.pixel_sigma * noise.pixel_sigma).epsilon(0.05));
}

TEST_CASE("config errors rejected") {
  TrajectorySpec spec = small_spec();
  geom::CameraModel cam;
  WorldFeatures empty;
  REQUIRE_THROWS_AS(generate_session(spec, empty, cam, NoiseConfig{}, 1), ConfigError);
  auto world = make_room_world(spec.room_min, spec.room_max, 10, 5);
  TrajectorySpec bad = spec;
  bad.duration = 0.0;
  REQUIRE_THROWS_AS(generate_session(bad, world, cam, NoiseConfig{}, 1), ConfigError);
  TrajectorySpec odd = spec;
  odd.cam_rate = 7.0;  // does not divide 200
  REQUIRE_THROWS_AS(generate_session(odd, world, cam, NoiseConfig{}, 1), ConfigError);
}

TEST_CASE("session csv dump writes the documented files") {
  namespace fs = std::filesystem;
  TrajectorySpec spec = small_spec();
  spec.duration = 2.0;
  auto world = make_room_world(spec.room_min, spec.room_max, 20, 5);
  auto s = generate_session(spec, world, geom::CameraModel{}, NoiseConfig{}, 3);
  const fs::path dir = fs::temp_directory_path() / "cskf_test_session";
  dump_session_csv(s, dir);
  for (const char* name : {"imu.csv", "obs.csv", "truth.csv"}) {
    std::ifstream f(dir / name);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    REQUIRE(!header.empty());
  }
  std::ifstream f(dir / "imu.csv");
  std::string header;
  std::getline(f, header);
  REQUIRE(header == "t,gx,gy,gz,ax,ay,az");
  fs::remove_all(dir);
}
