#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "dexsynth/common/math.h"

namespace dexsynth::geometry {

using Triangle = std::array<int, 3>;

/// Indexed triangle mesh in meters. Normals are per vertex and may be empty.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::vector<Vec3> normals;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t triangle_count() const { return triangles.size(); }
  bool empty() const { return triangles.empty(); }

  const Vec3& corner(std::size_t tri, int k) const { return vertices[triangles[tri][k]]; }
  double triangle_area(std::size_t tri) const;
  /// Unit normal following the counter-clockwise winding. Zero for degenerate faces.
  Vec3 face_normal(std::size_t tri) const;
  double surface_area() const;
};

/// Area at or below which a triangle is treated as degenerate (m^2).
inline constexpr double kDegenerateArea = 1e-12;

/// Drops faces with area <= min_area. Returns the number removed.
int remove_degenerate_triangles(TriangleMesh& mesh, double min_area = kDegenerateArea);

/// Fills mesh.normals with angle-weighted vertex normals.
void compute_vertex_normals(TriangleMesh& mesh);

/// True when every undirected edge is shared by exactly two faces.
bool is_closed(const TriangleMesh& mesh);

/// Checks index bounds; throws ValidationError on failure.
void validate(const TriangleMesh& mesh);

void transform_in_place(TriangleMesh& mesh, const Transform& pose);

/// Concatenates b into a, offsetting b's indices.
void append(TriangleMesh& a, const TriangleMesh& b);

}  // namespace dexsynth::geometry
