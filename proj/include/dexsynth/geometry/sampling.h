#pragma once

#include <cstddef>
#include <cstdint>

#include "dexsynth/geometry/point_cloud.h"
#include "dexsynth/geometry/triangle_mesh.h"

namespace dexsynth::geometry {

/// Draws n points uniformly by area over the mesh surface. Each point carries
/// the (flat) normal of the face it was drawn from. Deterministic per seed.
PointCloud sample_surface(const TriangleMesh& mesh, std::size_t n, std::uint64_t seed);

/// Uniform point on a triangle from two uniform variates in [0, 1).
Vec3 triangle_point(const Vec3& a, const Vec3& b, const Vec3& c, double u, double v);

}  // namespace dexsynth::geometry
