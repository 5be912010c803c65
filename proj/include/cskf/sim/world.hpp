#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cskf/errors.hpp"
#include "cskf/sim/trajectory.hpp"

namespace cskf::sim {

struct WorldFeature {
  long id;
  Vector3d position;
};

/// Static 3D point landmarks with unique ids and a shared visibility radius.
struct WorldFeatures {
  std::vector<WorldFeature> points;
  double visibility_radius = 12.0;  // meters

  void check(const Vector3d& room_min, const Vector3d& room_max) const {
    std::vector<char> seen;
    for (const auto& f : points) {
      if (f.id < 0) throw ConfigError("world: negative feature id");
      if (f.id >= static_cast<long>(seen.size())) seen.resize(f.id + 1, 0);
      if (seen[f.id]++) throw ConfigError("world: duplicate feature id");
      for (int k = 0; k < 3; ++k)
        if (f.position[k] < room_min[k] - 1e-9 || f.position[k] > room_max[k] + 1e-9)
          throw ConfigError("world: feature outside room bounds");
    }
  }
};

/// Features scattered on the four walls plus a sprinkle in the interior,
/// the texture a camera sweeping a room would track.
inline WorldFeatures make_room_world(const Vector3d& room_min, const Vector3d& room_max,
                                     int count, unsigned seed,
                                     double interior_fraction = 0.2) {
  if (count <= 0) throw ConfigError("world: feature count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  WorldFeatures w;
  const Vector3d ext = room_max - room_min;
  for (int i = 0; i < count; ++i) {
    Vector3d p;
    if (u01(rng) < interior_fraction) {
      p = room_min + Vector3d(u01(rng) * ext.x(), u01(rng) * ext.y(), u01(rng) * ext.z());
    } else {
      const int wall = static_cast<int>(u01(rng) * 4.0);
      const double a = u01(rng), b = u01(rng);
      switch (wall) {
        case 0: p = {room_min.x(), room_min.y() + a * ext.y(), room_min.z() + b * ext.z()}; break;
        case 1: p = {room_max.x(), room_min.y() + a * ext.y(), room_min.z() + b * ext.z()}; break;
        case 2: p = {room_min.x() + a * ext.x(), room_min.y(), room_min.z() + b * ext.z()}; break;
        default: p = {room_min.x() + a * ext.x(), room_max.y(), room_min.z() + b * ext.z()}; break;
      }
    }
    w.points.push_back({static_cast<long>(i), p});
  }
  w.visibility_radius = 1.5 * ext.norm();
  return w;
}

}  // namespace cskf::sim
