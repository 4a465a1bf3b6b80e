#pragma once

#include <cstdint>
#include <string>

#include "dexsynth/geometry/point_cloud.h"
#include "dexsynth/geometry/sdf.h"

namespace dexsynth::geometry {

/// An object to grasp: surface cloud plus mesh-backed signed distance.
struct ObjectModel {
  std::string id;
  std::string content_hash;
  PointCloud cloud;
  SdfQuery sdf;
  Vec3 centroid = Vec3::Zero();
  /// Largest distance from the centroid to a cloud point.
  double bounding_radius = 0.0;
};

ObjectModel make_object_model(TriangleMesh mesh, std::size_t n_points, std::uint64_t seed,
                              std::string id = {}, std::string content_hash = {});

}  // namespace dexsynth::geometry
