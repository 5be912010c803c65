#pragma once

#include <Eigen/Dense>

#include "cskf/errors.hpp"

namespace cskf::geom {

inline constexpr double kMinDepth = 1e-4;  // meters

/// Pinhole camera. The optical axis is the +z axis of the body frame the
/// camera is attached to (camera and IMU co-located and synchronized).
struct CameraModel {
  double fx = 300.0, fy = 300.0;
  double cx = 320.0, cy = 240.0;
  int width = 640, height = 480;
  double pixel_sigma = 1.0;

  Eigen::Vector2d project(const Eigen::Vector3d& p_cam) const {
    if (p_cam.z() <= kMinDepth) throw BehindCamera();
    return {fx * p_cam.x() / p_cam.z() + cx, fy * p_cam.y() / p_cam.z() + cy};
  }

  /// d project / d p_cam at p_cam.
  Eigen::Matrix<double, 2, 3> projection_jacobian(const Eigen::Vector3d& p_cam) const {
    if (p_cam.z() <= kMinDepth) throw BehindCamera();
    const double iz = 1.0 / p_cam.z();
    Eigen::Matrix<double, 2, 3> j;
    j << fx * iz, 0, -fx * p_cam.x() * iz * iz,
         0, fy * iz, -fy * p_cam.y() * iz * iz;
    return j;
  }

  bool in_image(const Eigen::Vector2d& px) const {
    return px.x() >= 0 && px.x() < width && px.y() >= 0 && px.y() < height;
  }
};

}  // namespace cskf::geom
