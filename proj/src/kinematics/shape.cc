#include "dexsynth/kinematics/shape.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dexsynth/common/error.h"
#include "dexsynth/geometry/primitives.h"
#include "dexsynth/geometry/sampling.h"

namespace dexsynth::kinematics {

namespace {

constexpr double kPi = std::numbers::pi;

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

ShapeDistance box_distance(const Vec3& half, const Vec3& p) {
  const Vec3 q = p.cwiseAbs() - half;
  if ((q.array() > 0.0).any()) {
    const Vec3 o = q.cwiseMax(0.0);
    const double d = o.norm();
    Vec3 g(sign_of(p.x()) * o.x(), sign_of(p.y()) * o.y(), sign_of(p.z()) * o.z());
    return {d, g / d};
  }
  int axis;
  const double d = q.maxCoeff(&axis);
  Vec3 g = Vec3::Zero();
  g[axis] = sign_of(p[axis]);
  return {d, g};
}

ShapeDistance cylinder_distance(double radius, double half_length, const Vec3& p) {
  const double rho = std::hypot(p.x(), p.y());
  const Vec3 radial = rho > 1e-15 ? Vec3(p.x() / rho, p.y() / rho, 0.0) : Vec3::UnitX();
  const double a = rho - radius;
  const double b = std::abs(p.z()) - half_length;
  const Vec3 axial(0.0, 0.0, sign_of(p.z()));
  if (a > 0.0 || b > 0.0) {
    const double oa = std::max(a, 0.0), ob = std::max(b, 0.0);
    const double d = std::hypot(oa, ob);
    return {d, (oa * radial + ob * axial) / d};
  }
  return a > b ? ShapeDistance{a, radial} : ShapeDistance{b, axial};
}

ShapeDistance segment_distance(double radius, double half_length, const Vec3& p) {
  const Vec3 c(0.0, 0.0, std::clamp(p.z(), -half_length, half_length));
  const Vec3 v = p - c;
  const double len = v.norm();
  return {len - radius, len > 1e-15 ? Vec3(v / len) : Vec3::UnitX()};
}

}  // namespace

ShapeDistance shape_distance(const Shape& shape, const Vec3& p) {
  return std::visit(
      [&](const auto& s) -> ShapeDistance {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SphereShape>) {
          const double len = p.norm();
          return {len - s.radius, len > 1e-15 ? Vec3(p / len) : Vec3::UnitX()};
        } else if constexpr (std::is_same_v<T, BoxShape>) {
          return box_distance(0.5 * s.size, p);
        } else if constexpr (std::is_same_v<T, CylinderShape>) {
          return cylinder_distance(s.radius, 0.5 * s.length, p);
        } else if constexpr (std::is_same_v<T, CapsuleShape>) {
          return segment_distance(s.radius, 0.5 * s.length, p);
        } else {
          const geometry::SdfSample sample = s.sdf->sample(p);
          return {sample.distance, sample.gradient};
        }
      },
      shape);
}

double shape_surface_area(const Shape& shape) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SphereShape>) {
          return 4.0 * kPi * s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, BoxShape>) {
          return 2.0 * (s.size.x() * s.size.y() + s.size.y() * s.size.z() + s.size.z() * s.size.x());
        } else if constexpr (std::is_same_v<T, CylinderShape>) {
          return 2.0 * kPi * s.radius * s.length + 2.0 * kPi * s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, CapsuleShape>) {
          return 2.0 * kPi * s.radius * s.length + 4.0 * kPi * s.radius * s.radius;
        } else {
          return s.sdf->mesh().surface_area();
        }
      },
      shape);
}

void sample_shape_surface(const Shape& shape, std::size_t n, Rng& rng, std::vector<Vec3>& out) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SphereShape>) {
          for (std::size_t i = 0; i < n; ++i) out.push_back(s.radius * rng.unit_vector());
        } else if constexpr (std::is_same_v<T, BoxShape>) {
          const Vec3 h = 0.5 * s.size;
          const double areas[3] = {s.size.y() * s.size.z(), s.size.z() * s.size.x(), s.size.x() * s.size.y()};
          const double total = areas[0] + areas[1] + areas[2];
          for (std::size_t i = 0; i < n; ++i) {
            const double pick = rng.uniform() * total;
            const int axis = pick < areas[0] ? 0 : (pick < areas[0] + areas[1] ? 1 : 2);
            Vec3 p;
            for (int k = 0; k < 3; ++k) p[k] = rng.uniform(-h[k], h[k]);
            p[axis] = rng.uniform() < 0.5 ? -h[axis] : h[axis];
            out.push_back(p);
          }
        } else if constexpr (std::is_same_v<T, CylinderShape> || std::is_same_v<T, CapsuleShape>) {
          constexpr bool capsule = std::is_same_v<T, CapsuleShape>;
          const double h = 0.5 * s.length;
          const double side = 2.0 * kPi * s.radius * s.length;
          const double caps = capsule ? 4.0 * kPi * s.radius * s.radius : 2.0 * kPi * s.radius * s.radius;
          for (std::size_t i = 0; i < n; ++i) {
            if (rng.uniform() * (side + caps) < side) {
              const double theta = rng.uniform(0.0, 2.0 * kPi);
              out.emplace_back(s.radius * std::cos(theta), s.radius * std::sin(theta), rng.uniform(-h, h));
            } else if constexpr (capsule) {
              const Vec3 u = rng.unit_vector();
              out.push_back(Vec3(0.0, 0.0, u.z() >= 0.0 ? h : -h) + s.radius * u);
            } else {
              const double r = s.radius * std::sqrt(rng.uniform());
              const double theta = rng.uniform(0.0, 2.0 * kPi);
              out.emplace_back(r * std::cos(theta), r * std::sin(theta), rng.uniform() < 0.5 ? -h : h);
            }
          }
        } else {
          const geometry::PointCloud cloud = geometry::sample_surface(s.sdf->mesh(), n, rng.next());
          out.insert(out.end(), cloud.points.begin(), cloud.points.end());
        }
      },
      shape);
}

geometry::TriangleMesh tessellate(const Shape& shape) {
  return std::visit(
      [](const auto& s) -> geometry::TriangleMesh {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SphereShape>) {
          return geometry::make_icosphere(s.radius, 2);
        } else if constexpr (std::is_same_v<T, BoxShape>) {
          return geometry::make_box(s.size);
        } else if constexpr (std::is_same_v<T, CylinderShape>) {
          return geometry::make_cylinder(s.radius, s.length);
        } else if constexpr (std::is_same_v<T, CapsuleShape>) {
          return geometry::make_capsule(s.radius, s.length);
        } else {
          return s.sdf->mesh();
        }
      },
      shape);
}

}  // namespace dexsynth::kinematics
