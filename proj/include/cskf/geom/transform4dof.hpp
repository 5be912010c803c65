#pragma once

#include <Eigen/Dense>

#include "cskf/geom/rotation.hpp"

namespace cskf::geom {

/// Gravity-aligned 4-d.o.f. transform between a map frame and the global
/// frame: rotation() = Rz(yaw) maps map coordinates into global coordinates,
/// translation is the map origin in the global frame. Both frames have their
/// z-axis aligned with gravity, so the rotation is strictly about z.
struct MapTransform4DoF {
  double yaw = 0.0;
  Vector3d translation = Vector3d::Zero();

  Matrix3d rotation() const { return rot_z(yaw); }

  Vector3d to_global(const Vector3d& p_map) const {
    return rotation() * p_map + translation;
  }

  Vector3d to_map(const Vector3d& p_global) const {
    return rotation().transpose() * (p_global - translation);
  }

  /// d(rotation() * v) / d yaw.
  Vector3d d_rotation_d_yaw(const Vector3d& v) const {
    return skew(Vector3d::UnitZ()) * (rotation() * v);
  }
};

}  // namespace cskf::geom
