#pragma once

// Exhaustive reference implementations shared by unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <limits>

#include "dexsynth/common/rng.h"
#include "dexsynth/contact/contact_map.h"
#include "dexsynth/geometry/point_cloud.h"
#include "dexsynth/geometry/triangle_mesh.h"

namespace dexsynth::testing {

inline double segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (a + t * ab - p).norm();
}

// Plane projection when it lands inside, else the closest edge.
inline double triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = (b - a).cross(c - a).normalized();
  const Vec3 proj = p - n * (p - a).dot(n);
  const bool inside = (b - a).cross(proj - a).dot(n) >= 0 && (c - b).cross(proj - b).dot(n) >= 0 &&
                      (a - c).cross(proj - c).dot(n) >= 0;
  if (inside) return std::abs((p - a).dot(n));
  return std::min({segment_distance(p, a, b), segment_distance(p, b, c), segment_distance(p, c, a)});
}

inline double brute_force_distance(const geometry::TriangleMesh& mesh, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    best = std::min(best, triangle_distance(p, mesh.corner(t, 0), mesh.corner(t, 1), mesh.corner(t, 2)));
  }
  return best;
}

/// Remap target by scanning every point: bisector of the two unit directions,
/// forward half-space only, distance to the ray through the cross product,
/// lowest index on ties. -2 for a degenerate bisector, -1 for an empty half-space.
inline int brute_force_remap_target(const std::vector<Vec3>& points, std::size_t x, const Vec3& mo,
                                    const Vec3& m_other) {
  const Vec3 u = (points[x] - mo) / (points[x] - mo).norm();
  const Vec3 w = (m_other - mo) / (m_other - mo).norm();
  const Vec3 s = u + w;
  if (s.norm() < 1e-9) return -2;
  const Vec3 v = s / s.norm();
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Vec3 r = points[k] - mo;
    if (!(r.dot(v) > 0)) continue;
    const double d = r.cross(v).norm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(k);
    }
  }
  return best;
}

/// Contact with 2 cm linear patches for the given labels at random object points.
inline contact::HumanContact random_contact(const geometry::PointCloud& cloud, const std::vector<int>& labels,
                                            Rng& rng) {
  contact::HumanContact c;
  c.contact.assign(cloud.size(), 0.0f);
  c.part.assign(cloud.size(), 0);
  for (int label : labels) {
    const Vec3 center = cloud.points[rng.index(cloud.size())];
    for (std::size_t k = 0; k < cloud.size(); ++k) {
      const double d = (cloud.points[k] - center).norm();
      const auto v = static_cast<float>(std::max(0.0, 1.0 - d / 0.02));
      if (v > c.contact[k]) {
        c.contact[k] = v;
        c.part[k] = static_cast<std::uint8_t>(label);
      }
    }
  }
  return c;
}

}  // namespace dexsynth::testing
