#pragma once

#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "cskf/geom/camera.hpp"
#include "cskf/geom/rotation.hpp"
#include "cskf/geom/transform4dof.hpp"
#include "cskf/sparse/lower_triangular.hpp"

namespace cskf::mapping {

using Eigen::Vector3d;
using sparse::Index;

/// A mapped feature, expressed in the frame of the mapping pose that first
/// observed it (its anchor).
struct MappedFeature {
  long world_id = -1;       // simulator feature id, the association oracle
  int anchor_pose = 0;      // index into the owning submap's pose array
  Vector3d p_anchor = Vector3d::Zero();
};

/// One (sub-)map: estimated IMU-camera poses in the submap frame, anchored
/// feature estimates, the Cholesky factor of the submap Hessian, and the
/// per-pose visibility table used for correspondence candidate selection.
///
/// Error-state layout: pose i occupies [6i, 6i+6) as (theta, position),
/// feature j occupies [6*poses.size() + 3j, ... + 3).
struct Submap {
  std::vector<geom::Pose> poses;
  std::vector<double> pose_times;
  std::vector<MappedFeature> features;
  std::vector<std::vector<int>> visible_features;  // per pose: feature indices
  sparse::SparseLowerTriangular factor;

  Index pose_offset(Index i) const { return 6 * i; }
  Index feature_offset(Index j) const {
    return 6 * static_cast<Index>(poses.size()) + 3 * j;
  }
  Index dim() const {
    return 6 * static_cast<Index>(poses.size()) + 3 * static_cast<Index>(features.size());
  }

  /// Feature position in the submap frame via its anchor chain.
  Vector3d feature_in_map(int j) const {
    const auto& f = features[j];
    const auto& anchor = poses[f.anchor_pose];
    return anchor.position + anchor.orientation.matrix().transpose() * f.p_anchor;
  }
};

/// Persisted artifact of the mapper. Each feature lives in exactly one
/// submap's state vector; features common to two submaps during cooperative
/// mapping appear once per submap as duplicates.
struct MapBundle {
  geom::CameraModel camera;
  double pixel_sigma = 1.0;
  Vector3d gravity{0.0, 0.0, -9.81};
  std::vector<Submap> submaps;
  // transform from submap i's frame into submap 0's frame (identity for i=0),
  // estimated by the cooperative-mapping solve; metadata, not filter state
  std::vector<geom::MapTransform4DoF> inter_submap;

  /// world feature id -> (submap index, feature index); first hit wins.
  std::unordered_map<long, std::pair<int, int>> feature_index() const {
    std::unordered_map<long, std::pair<int, int>> idx;
    for (int s = 0; s < static_cast<int>(submaps.size()); ++s)
      for (int j = 0; j < static_cast<int>(submaps[s].features.size()); ++j)
        idx.emplace(submaps[s].features[j].world_id, std::make_pair(s, j));
    return idx;
  }
};

}  // namespace cskf::mapping
