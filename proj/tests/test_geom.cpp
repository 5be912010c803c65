#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "cskf/geom/camera.hpp"
#include "cskf/geom/jacobians.hpp"
#include "cskf/geom/rotation.hpp"
#include "cskf/geom/transform4dof.hpp"
#include "support/finite_difference.hpp"
#include "support/test_rng.hpp"

using namespace cskf;
using namespace cskf::geom;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;
using testsupport::Rng;

namespace {

UnitQuaternion random_quat(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return UnitQuaternion(n(rng), n(rng), n(rng), n(rng));
}

Pose random_pose(Rng& rng, double pos_scale = 2.0) {
  std::normal_distribution<double> n(0.0, pos_scale);
  return {random_quat(rng), Vector3d(n(rng), n(rng), n(rng))};
}

struct MapScenario {
  CameraModel cam;
  Pose device;
  MapTransform4DoF tf;
  Pose anchor;
  Vector3d p_feat;
};

// Random configuration with the feature guaranteed well in front of the camera.
MapScenario random_map_scenario(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    MapScenario s;
    s.device = random_pose(rng);
    s.tf.yaw = 3.0 * u(rng);
    s.tf.translation = Vector3d(u(rng), u(rng), u(rng));
    s.anchor = random_pose(rng);
    s.p_feat = Vector3d(2 * u(rng), 2 * u(rng), 2 * u(rng));
    const Vector3d p_cam = mapped_feature_in_device(s.device, s.tf, s.anchor, s.p_feat);
    if (p_cam.z() > 0.3 && p_cam.norm() < 20.0) return s;
  }
}

}  // namespace

TEST_CASE("quaternion composition keeps unit norm and associativity") {
  Rng rng(101);
  UnitQuaternion acc;
  for (int i = 0; i < 1000000; ++i) {
    acc = acc * random_quat(rng);
    }
  const double norm = std::sqrt(acc.x() * acc.x() + acc.y() * acc.y() +
                                acc.z() * acc.z() + acc.w() * acc.w());
  REQUIRE(norm == Catch::Approx(1.0).margin(1e-12));

  for (int i = 0; i < 2000; ++i) {
    auto a = random_quat(rng), b = random_quat(rng), c = random_quat(rng);
    auto left = (a * b) * c;
    auto right = a * (b * c);
    REQUIRE((left.matrix() - right.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("quaternion boxplus/boxminus round trip and matrix convention") {
  Rng rng(102);
  std::normal_distribution<double> n(0.0, 0.3);
  for (int i = 0; i < 500; ++i) {
    auto q = random_quat(rng);
    Vector3d delta(n(rng), n(rng), n(rng));
    auto q2 = q.boxplus(delta);
    REQUIRE((q2.boxminus(q) - delta).norm() < 1e-9);
  }
  // small-angle left perturbation: matrix(dq (x) q) ~ (I + skew(d)) matrix(q)
  auto q = random_quat(rng);
  Vector3d d(1e-7, -2e-7, 3e-7);
  Eigen::Matrix3d lhs = q.boxplus(d).matrix();
  Eigen::Matrix3d rhs = (Eigen::Matrix3d::Identity() + skew(d)) * q.matrix();
  REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("map transform leaves gravity unchanged and round-trips") {
  Rng rng(103);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const Vector3d gravity(0, 0, -9.81);
  for (int i = 0; i < 100; ++i) {
    MapTransform4DoF tf{u(rng), Vector3d(u(rng), u(rng), 0.0)};
    REQUIRE((tf.rotation() * gravity - gravity).norm() < 1e-12);
    Vector3d p(u(rng), u(rng), u(rng));
    REQUIRE((tf.to_map(tf.to_global(p)) - p).norm() < 1e-12);
  }
}

TEST_CASE("pinhole projection examples") {
  CameraModel unit{1, 1, 0, 0, 2, 2, 1.0};
  REQUIRE(unit.project(Vector3d(0, 0, 1)) == Vector2d(0, 0));

  CameraModel cam{100, 100, 50, 50, 640, 480, 1.0};
  Vector2d px = cam.project(Vector3d(0.1, 0.2, 2.0));
  REQUIRE(px.x() == Catch::Approx(55.0));
  REQUIRE(px.y() == Catch::Approx(60.0));

  REQUIRE_THROWS_AS(cam.project(Vector3d(1, 1, -1)), BehindCamera);
}

TEST_CASE("mapped feature prediction: identity chain") {
  Pose device, anchor;
  MapTransform4DoF tf;
  Vector3d p(1, 2, 3);
  REQUIRE((mapped_feature_in_device(device, tf, anchor, p) - p).norm() < 1e-15);
}

TEST_CASE("mapped feature prediction: quarter-turn yaw with offset") {
  Pose device, anchor;
  MapTransform4DoF tf{std::numbers::pi / 2.0, Vector3d(1, 0, 0)};
  Vector3d p(1, 0, 0);
  Vector3d out = mapped_feature_in_device(device, tf, anchor, p);
  REQUIRE((out - Vector3d(1, 1, 0)).norm() < 1e-12);
}

TEST_CASE("mapped feature prediction matches homogeneous-chain oracle") {
  Rng rng(104);
  for (int i = 0; i < 200; ++i) {
    auto s = random_map_scenario(rng);

    // independent composition via 4x4 homogeneous transforms
    Eigen::Matrix4d t_world_to_dev = Eigen::Matrix4d::Identity();
    t_world_to_dev.topLeftCorner<3, 3>() = s.device.orientation.matrix();
    t_world_to_dev.topRightCorner<3, 1>() =
        -s.device.orientation.matrix() * s.device.position;
    Eigen::Matrix4d t_map_to_world = Eigen::Matrix4d::Identity();
    t_map_to_world.topLeftCorner<3, 3>() = rot_z(s.tf.yaw);
    t_map_to_world.topRightCorner<3, 1>() = s.tf.translation;
    Eigen::Matrix4d t_anchor_to_map = Eigen::Matrix4d::Identity();
    t_anchor_to_map.topLeftCorner<3, 3>() = s.anchor.orientation.matrix().transpose();
    t_anchor_to_map.topRightCorner<3, 1>() = s.anchor.position;

    Eigen::Vector4d hom(s.p_feat.x(), s.p_feat.y(), s.p_feat.z(), 1.0);
    Eigen::Vector4d expected = t_world_to_dev * t_map_to_world * t_anchor_to_map * hom;

    Vector3d got = mapped_feature_in_device(s.device, s.tf, s.anchor, s.p_feat);
    REQUIRE((got - expected.head<3>()).norm() < 1e-12);
  }
}

TEST_CASE("mapped feature jacobians match finite differences") {
  Rng rng(105);
  int checked = 0;
  while (checked < 100) {
    auto s = random_map_scenario(rng);

    auto predict = [&](const Pose& dev, const MapTransform4DoF& tf, const Pose& anc,
                       const Vector3d& pf) -> VectorXd {
      return s.cam.project(mapped_feature_in_device(dev, tf, anc, pf));
    };

    MapObservationJacobians jac;
    try {
      jac = mapped_feature_jacobians(s.cam, s.device, s.tf, s.anchor, s.p_feat);
    } catch (const BehindCamera&) {
      continue;
    }

    auto perturbed = [&](const VectorXd& d) -> VectorXd {
      Pose dev{s.device.orientation.boxplus(d.segment<3>(0)),
               s.device.position + d.segment<3>(3)};
      MapTransform4DoF tf{s.tf.yaw + d(6), s.tf.translation + d.segment<3>(7)};
      Pose anc{s.anchor.orientation.boxplus(d.segment<3>(10)),
               s.anchor.position + d.segment<3>(13)};
      return predict(dev, tf, anc, s.p_feat + d.segment<3>(16));
    };
    Eigen::MatrixXd fd = testsupport::central_difference(perturbed, 19);

    Eigen::MatrixXd analytic(2, 19);
    analytic << jac.wrt_device_theta, jac.wrt_device_pos, jac.wrt_yaw,
        jac.wrt_translation, jac.wrt_anchor_theta, jac.wrt_anchor_pos, jac.wrt_feature;
    REQUIRE(testsupport::relative_block_error(analytic, fd) < 1e-5);
    ++checked;
  }
}

TEST_CASE("on-axis feature: lateral translation rows vanish in z column") {
  CameraModel cam{200, 200, 320, 240, 640, 480, 1.0};
  Pose device, anchor;
  MapTransform4DoF tf;
  Vector3d p_feat(0, 0, 4);  // on the optical axis
  auto jac = mapped_feature_jacobians(cam, device, tf, anchor, p_feat);
  // moving the device along the optical axis changes depth only: zero pixel motion
  REQUIRE(std::abs(jac.wrt_device_pos(0, 2)) < 1e-12);
  REQUIRE(std::abs(jac.wrt_device_pos(1, 2)) < 1e-12);

  auto fd = testsupport::central_difference(
      [&](const VectorXd& d) -> VectorXd {
        Pose dev{device.orientation, device.position + d};
        return cam.project(mapped_feature_in_device(dev, tf, anchor, p_feat));
      },
      3);
  REQUIRE(testsupport::relative_block_error(jac.wrt_device_pos, fd) < 1e-6);
}

TEST_CASE("local feature jacobians match finite differences") {
  Rng rng(106);
  CameraModel cam;
  int checked = 0;
  while (checked < 100) {
    Pose pose = random_pose(rng);
    std::normal_distribution<double> n(0.0, 2.0);
    Vector3d pf(n(rng), n(rng), n(rng));
    if (local_feature_in_camera(pose, pf).z() < 0.3) continue;

    auto jac = local_feature_jacobians(cam, pose, pf);
    auto fd = testsupport::central_difference(
        [&](const VectorXd& d) -> VectorXd {
          Pose p{pose.orientation.boxplus(d.segment<3>(0)),
                 pose.position + d.segment<3>(3)};
          return cam.project(local_feature_in_camera(p, pf + d.segment<3>(6)));
        },
        9);
    Eigen::MatrixXd analytic(2, 9);
    analytic << jac.wrt_pose_theta, jac.wrt_pose_pos, jac.wrt_feature;
    REQUIRE(testsupport::relative_block_error(analytic, fd) < 1e-5);
    ++checked;
  }
}
