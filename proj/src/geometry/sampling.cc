#include "dexsynth/geometry/sampling.h"

#include <algorithm>
#include <cmath>

#include "dexsynth/common/error.h"
#include "dexsynth/common/rng.h"

namespace dexsynth::geometry {

Vec3 triangle_point(const Vec3& a, const Vec3& b, const Vec3& c, double u, double v) {
  const double s = std::sqrt(u);
  return (1.0 - s) * a + s * (1.0 - v) * b + s * v * c;
}

PointCloud sample_surface(const TriangleMesh& mesh, std::size_t n, std::uint64_t seed) {
  if (mesh.empty()) throw Error("sample_surface: mesh has no triangles");
  if (n == 0) throw Error("sample_surface: n must be at least 1");

  std::vector<double> cumulative(mesh.triangle_count());
  double total = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    total += mesh.triangle_area(t);
    cumulative[t] = total;
  }
  if (!(total > 0.0)) throw Error("sample_surface: mesh has zero area");

  Rng rng(seed);
  PointCloud cloud;
  cloud.points.reserve(n);
  cloud.normals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    const std::size_t t = std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
    const double u = rng.uniform();
    const double v = rng.uniform();
    cloud.points.push_back(triangle_point(mesh.corner(t, 0), mesh.corner(t, 1), mesh.corner(t, 2), u, v));
    cloud.normals.push_back(mesh.face_normal(t));
  }
  return cloud;
}

}  // namespace dexsynth::geometry
