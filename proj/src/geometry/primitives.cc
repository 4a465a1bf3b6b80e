#include "dexsynth/geometry/primitives.h"

#include <cmath>
#include <map>
#include <numbers>

namespace dexsynth::geometry {

TriangleMesh make_box(const Vec3& size) {
  const Vec3 h = 0.5 * size;
  TriangleMesh m;
  for (int i = 0; i < 8; ++i) {
    m.vertices.emplace_back((i & 1) ? h.x() : -h.x(), (i & 2) ? h.y() : -h.y(), (i & 4) ? h.z() : -h.z());
  }
  m.triangles = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6}, {0, 1, 4}, {1, 5, 4},
                 {2, 6, 3}, {3, 6, 7}, {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
  compute_vertex_normals(m);
  return m;
}

TriangleMesh make_icosphere(double radius, int subdivisions) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriangleMesh m;
  m.vertices = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (Vec3& v : m.vertices) v.normalize();
  m.triangles = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                 {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
                 {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoints;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      m.vertices.push_back((m.vertices[a] + m.vertices[b]).normalized());
      const int id = static_cast<int>(m.vertices.size()) - 1;
      midpoints.emplace(key, id);
      return id;
    };
    std::vector<Triangle> next;
    next.reserve(m.triangles.size() * 4);
    for (const Triangle& tri : m.triangles) {
      const int ab = midpoint(tri[0], tri[1]);
      const int bc = midpoint(tri[1], tri[2]);
      const int ca = midpoint(tri[2], tri[0]);
      next.push_back({tri[0], ab, ca});
      next.push_back({tri[1], bc, ab});
      next.push_back({tri[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.triangles = std::move(next);
  }
  m.normals = m.vertices;
  for (Vec3& v : m.vertices) v *= radius;
  return m;
}

TriangleMesh make_uv_sphere(double radius, int slices, int stacks) {
  TriangleMesh m;
  m.vertices.emplace_back(0, 0, radius);
  for (int i = 1; i < stacks; ++i) {
    const double phi = std::numbers::pi * i / stacks;
    for (int j = 0; j < slices; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / slices;
      m.vertices.emplace_back(radius * std::sin(phi) * std::cos(theta),
                              radius * std::sin(phi) * std::sin(theta), radius * std::cos(phi));
    }
  }
  m.vertices.emplace_back(0, 0, -radius);
  const int south = static_cast<int>(m.vertices.size()) - 1;
  auto ring = [&](int i, int j) { return 1 + (i - 1) * slices + (j % slices); };
  for (int j = 0; j < slices; ++j) m.triangles.push_back({0, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i < stacks - 1; ++i) {
    for (int j = 0; j < slices; ++j) {
      m.triangles.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      m.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  }
  for (int j = 0; j < slices; ++j) m.triangles.push_back({south, ring(stacks - 1, j + 1), ring(stacks - 1, j)});
  m.normals.reserve(m.vertices.size());
  for (const Vec3& v : m.vertices) m.normals.push_back(v.normalized());
  return m;
}

namespace {

// Surface of revolution about z from a profile of (radius, z) samples
// ordered bottom to top. Zero-radius endpoints become single pole vertices.
TriangleMesh revolve(const std::vector<std::pair<double, double>>& profile, int slices) {
  TriangleMesh m;
  std::vector<int> ring_start;
  for (const auto& [r, z] : profile) {
    ring_start.push_back(static_cast<int>(m.vertices.size()));
    if (r == 0.0) {
      m.vertices.emplace_back(0, 0, z);
      continue;
    }
    for (int j = 0; j < slices; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / slices;
      m.vertices.emplace_back(r * std::cos(theta), r * std::sin(theta), z);
    }
  }
  for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
    const bool lower_pole = profile[i].first == 0.0;
    const bool upper_pole = profile[i + 1].first == 0.0;
    const int a0 = ring_start[i], b0 = ring_start[i + 1];
    for (int j = 0; j < slices; ++j) {
      const int j1 = (j + 1) % slices;
      if (lower_pole && upper_pole) continue;
      if (lower_pole) {
        m.triangles.push_back({a0, b0 + j1, b0 + j});
      } else if (upper_pole) {
        m.triangles.push_back({a0 + j, a0 + j1, b0});
      } else {
        m.triangles.push_back({a0 + j, a0 + j1, b0 + j1});
        m.triangles.push_back({a0 + j, b0 + j1, b0 + j});
      }
    }
  }
  return m;
}

}  // namespace

TriangleMesh make_cylinder(double radius, double length, int slices) {
  const double h = 0.5 * length;
  TriangleMesh m = revolve({{0.0, -h}, {radius, -h}, {radius, h}, {0.0, h}}, slices);
  compute_vertex_normals(m);
  return m;
}

TriangleMesh make_capsule(double radius, double length, int slices, int cap_stacks) {
  const double h = 0.5 * length;
  std::vector<std::pair<double, double>> profile;
  for (int i = 0; i <= cap_stacks; ++i) {
    const double a = -0.5 * std::numbers::pi + 0.5 * std::numbers::pi * i / cap_stacks;
    profile.emplace_back(i == 0 ? 0.0 : radius * std::cos(a), -h + radius * std::sin(a));
  }
  for (int i = 0; i <= cap_stacks; ++i) {
    const double a = 0.5 * std::numbers::pi * i / cap_stacks;
    profile.emplace_back(i == cap_stacks ? 0.0 : radius * std::cos(a), h + radius * std::sin(a));
  }
  TriangleMesh m = revolve(profile, slices);
  compute_vertex_normals(m);
  return m;
}

}  // namespace dexsynth::geometry
