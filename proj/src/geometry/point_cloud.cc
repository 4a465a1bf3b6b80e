#include "dexsynth/geometry/point_cloud.h"

#include <cmath>
#include <string>

#include "dexsynth/common/error.h"
#include "dexsynth/common/hash.h"

namespace dexsynth::geometry {

void validate(const PointCloud& cloud) {
  if (cloud.points.empty()) throw ValidationError("point cloud is empty");
  if (cloud.normals.size() != cloud.points.size()) {
    throw ValidationError("point cloud normal count does not match point count");
  }
  for (std::size_t i = 0; i < cloud.normals.size(); ++i) {
    if (std::abs(cloud.normals[i].norm() - 1.0) > 1e-6) {
      throw ValidationError("point cloud normal " + std::to_string(i) + " is not unit length");
    }
  }
}

std::uint64_t hash_points(const PointCloud& cloud) {
  const auto* data = reinterpret_cast<const std::byte*>(cloud.points.data());
  // Vec3 is three packed doubles.
  static_assert(sizeof(Vec3) == 3 * sizeof(double));
  return fnv1a64(std::span(data, cloud.points.size() * sizeof(Vec3)));
}

}  // namespace dexsynth::geometry
