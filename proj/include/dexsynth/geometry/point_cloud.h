#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dexsynth/common/math.h"

namespace dexsynth::geometry {

/// Points with outward unit normals, in meters.
struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Throws ValidationError unless the cloud is non-empty with unit normals.
void validate(const PointCloud& cloud);

/// Content hash over the raw coordinates (not the normals).
std::uint64_t hash_points(const PointCloud& cloud);

}  // namespace dexsynth::geometry
