#pragma once

#include <memory>

#include "dexsynth/geometry/triangle_mesh.h"

namespace dexsynth::geometry {

/// Result of a closest-point query against a triangle mesh.
struct SdfSample {
  /// Signed distance: negative inside, positive outside (unsigned for open meshes).
  double distance = 0.0;
  /// Spatial gradient of the signed distance (unit length).
  Vec3 gradient = Vec3::UnitZ();
  Vec3 closest = Vec3::Zero();
  int triangle = -1;
};

/// Signed distance to a triangle mesh, backed by an AABB tree.
///
/// The sign comes from the angle-weighted pseudonormal of the closest
/// feature (face, edge or vertex), which is exact for closed, consistently
/// oriented meshes. Open meshes fall back to unsigned distance.
///
/// Immutable after construction; copies share the underlying tree.
class SdfQuery {
 public:
  explicit SdfQuery(TriangleMesh mesh);

  double signed_distance(const Vec3& p) const { return sample(p).distance; }
  SdfSample sample(const Vec3& p) const;

  bool is_signed() const;
  const TriangleMesh& mesh() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Closest point on triangle (a, b, c) to p, with the feature it lies on:
/// 0..2 vertex, 3..5 edge (k, k+1 mod 3) for k = feature - 3, 6 interior.
struct TriangleClosestPoint {
  Vec3 point;
  int feature = 6;
};
TriangleClosestPoint closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace dexsynth::geometry
