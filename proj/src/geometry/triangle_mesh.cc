#include "dexsynth/geometry/triangle_mesh.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "dexsynth/common/error.h"

namespace dexsynth::geometry {

double TriangleMesh::triangle_area(std::size_t tri) const {
  return 0.5 * (corner(tri, 1) - corner(tri, 0)).cross(corner(tri, 2) - corner(tri, 0)).norm();
}

Vec3 TriangleMesh::face_normal(std::size_t tri) const {
  const Vec3 n = (corner(tri, 1) - corner(tri, 0)).cross(corner(tri, 2) - corner(tri, 0));
  const double len = n.norm();
  return len > 0.0 ? Vec3(n / len) : Vec3::Zero();
}

double TriangleMesh::surface_area() const {
  double area = 0.0;
  for (std::size_t i = 0; i < triangles.size(); ++i) area += triangle_area(i);
  return area;
}

int remove_degenerate_triangles(TriangleMesh& mesh, double min_area) {
  const std::size_t before = mesh.triangles.size();
  std::vector<Triangle> kept;
  kept.reserve(before);
  for (std::size_t i = 0; i < before; ++i) {
    if (mesh.triangle_area(i) > min_area) kept.push_back(mesh.triangles[i]);
  }
  mesh.triangles = std::move(kept);
  return static_cast<int>(before - mesh.triangles.size());
}

void compute_vertex_normals(TriangleMesh& mesh) {
  mesh.normals.assign(mesh.vertices.size(), Vec3::Zero());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const Vec3 n = mesh.face_normal(t);
    for (int k = 0; k < 3; ++k) {
      const Vec3 e1 = (mesh.corner(t, (k + 1) % 3) - mesh.corner(t, k)).normalized();
      const Vec3 e2 = (mesh.corner(t, (k + 2) % 3) - mesh.corner(t, k)).normalized();
      const double angle = std::acos(std::clamp(e1.dot(e2), -1.0, 1.0));
      mesh.normals[mesh.triangles[t][k]] += angle * n;
    }
  }
  for (Vec3& n : mesh.normals) {
    const double len = n.norm();
    n = len > 0.0 ? Vec3(n / len) : Vec3::UnitZ();
  }
}

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

bool is_closed(const TriangleMesh& mesh) {
  if (mesh.triangles.empty()) return false;
  std::unordered_map<std::uint64_t, int> uses;
  for (const Triangle& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) ++uses[edge_key(t[k], t[(k + 1) % 3])];
  }
  return std::all_of(uses.begin(), uses.end(), [](const auto& kv) { return kv.second == 2; });
}

void validate(const TriangleMesh& mesh) {
  const int n = static_cast<int>(mesh.vertices.size());
  for (const Triangle& t : mesh.triangles) {
    for (int idx : t) {
      if (idx < 0 || idx >= n) {
        throw ValidationError("triangle vertex index out of range: " + std::to_string(idx));
      }
    }
  }
  if (!mesh.normals.empty() && mesh.normals.size() != mesh.vertices.size()) {
    throw ValidationError("normal count does not match vertex count");
  }
}

void transform_in_place(TriangleMesh& mesh, const Transform& pose) {
  for (Vec3& v : mesh.vertices) v = pose * v;
  for (Vec3& n : mesh.normals) n = pose.linear() * n;
}

void append(TriangleMesh& a, const TriangleMesh& b) {
  const int offset = static_cast<int>(a.vertices.size());
  const bool keep_normals = (a.vertices.empty() || !a.normals.empty()) && !b.normals.empty();
  a.vertices.insert(a.vertices.end(), b.vertices.begin(), b.vertices.end());
  if (keep_normals) {
    a.normals.insert(a.normals.end(), b.normals.begin(), b.normals.end());
  } else {
    a.normals.clear();
  }
  for (Triangle t : b.triangles) {
    for (int& idx : t) idx += offset;
    a.triangles.push_back(t);
  }
}

}  // namespace dexsynth::geometry
