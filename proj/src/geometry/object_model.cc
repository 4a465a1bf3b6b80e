#include "dexsynth/geometry/object_model.h"

#include <algorithm>

#include "dexsynth/geometry/sampling.h"

namespace dexsynth::geometry {

ObjectModel make_object_model(TriangleMesh mesh, std::size_t n_points, std::uint64_t seed,
                              std::string id, std::string content_hash) {
  PointCloud cloud = sample_surface(mesh, n_points, seed);
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : cloud.points) centroid += p;
  centroid /= static_cast<double>(cloud.size());
  double radius = 0.0;
  for (const Vec3& p : cloud.points) radius = std::max(radius, (p - centroid).norm());
  return ObjectModel{std::move(id), std::move(content_hash), std::move(cloud), SdfQuery(std::move(mesh)),
                     centroid, radius};
}

}  // namespace dexsynth::geometry
