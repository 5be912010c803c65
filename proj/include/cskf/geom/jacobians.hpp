#pragma once

#include <Eigen/Dense>

#include "cskf/geom/camera.hpp"
#include "cskf/geom/rotation.hpp"
#include "cskf/geom/transform4dof.hpp"

namespace cskf::geom {

using Mat23 = Eigen::Matrix<double, 2, 3>;

/// Mapped-feature geometry: the feature is stored in the frame of the mapping
/// pose that first observed it (anchor). The chain below expresses it in the
/// current device frame:
///   p_dev = C_dev * ( t + Rz(yaw) * [p_anchor_pose + C_anchor^T * p_feat] - p_device )
/// with C_dev the device world->body matrix, (yaw, t) the map-to-global
/// transform, and the anchor pose expressed in the map frame.
inline Vector3d mapped_feature_in_device(const Pose& device, const MapTransform4DoF& tf,
                                         const Pose& anchor, const Vector3d& p_feat_anchor) {
  const Vector3d in_map =
      anchor.position + anchor.orientation.matrix().transpose() * p_feat_anchor;
  const Vector3d in_global = tf.to_global(in_map) - device.position;
  return device.orientation.matrix() * in_global;
}

/// Per-observation mapped-feature measurement Jacobians, projection folded in.
/// Error-state blocks outside {device pose, transform, anchor pose, feature}
/// are zero by construction.
struct MapObservationJacobians {
  Eigen::Vector2d z_hat;
  Mat23 wrt_device_theta;
  Mat23 wrt_device_pos;
  Eigen::Vector2d wrt_yaw;
  Mat23 wrt_translation;
  Mat23 wrt_anchor_theta;
  Mat23 wrt_anchor_pos;
  Mat23 wrt_feature;
};

inline MapObservationJacobians mapped_feature_jacobians(const CameraModel& cam,
                                                        const Pose& device,
                                                        const MapTransform4DoF& tf,
                                                        const Pose& anchor,
                                                        const Vector3d& p_feat_anchor) {
  const Matrix3d c_dev = device.orientation.matrix();
  const Matrix3d c_map_from_anchor = anchor.orientation.matrix().transpose();
  const Matrix3d r_gm = tf.rotation();

  const Vector3d y_map = anchor.position + c_map_from_anchor * p_feat_anchor;
  const Vector3d y_global = r_gm * y_map + tf.translation - device.position;
  const Vector3d p_cam = c_dev * y_global;

  const Mat23 pi = cam.projection_jacobian(p_cam);  // throws BehindCamera
  MapObservationJacobians out;
  out.z_hat = cam.project(p_cam);
  out.wrt_device_theta = pi * (-skew(p_cam));
  out.wrt_device_pos = pi * (-c_dev);
  out.wrt_yaw = pi * (c_dev * (skew(Vector3d::UnitZ()) * (r_gm * y_map)));
  out.wrt_translation = pi * c_dev;
  out.wrt_anchor_theta = pi * (c_dev * r_gm * c_map_from_anchor * skew(p_feat_anchor));
  out.wrt_anchor_pos = pi * (c_dev * r_gm);
  out.wrt_feature = pi * (c_dev * r_gm * c_map_from_anchor);
  return out;
}

/// Local (non-mapped) feature observed from a window pose; feature held in
/// global coordinates.
struct LocalObservationJacobians {
  Eigen::Vector2d z_hat;
  Mat23 wrt_pose_theta;
  Mat23 wrt_pose_pos;
  Mat23 wrt_feature;
};

inline Vector3d local_feature_in_camera(const Pose& pose, const Vector3d& p_feat_global) {
  return pose.orientation.matrix() * (p_feat_global - pose.position);
}

inline LocalObservationJacobians local_feature_jacobians(const CameraModel& cam,
                                                         const Pose& pose,
                                                         const Vector3d& p_feat_global) {
  const Matrix3d c = pose.orientation.matrix();
  const Vector3d p_cam = c * (p_feat_global - pose.position);
  const Mat23 pi = cam.projection_jacobian(p_cam);
  LocalObservationJacobians out;
  out.z_hat = cam.project(p_cam);
  out.wrt_pose_theta = pi * (-skew(p_cam));
  out.wrt_pose_pos = pi * (-c);
  out.wrt_feature = pi * c;
  return out;
}

}  // namespace cskf::geom
