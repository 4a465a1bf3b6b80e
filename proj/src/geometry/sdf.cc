#include "dexsynth/geometry/sdf.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "dexsynth/common/error.h"

namespace dexsynth::geometry {

TriangleClosestPoint closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  // Voronoi-region walk (Ericson, Real-Time Collision Detection 5.1.5).
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return {a, 0};

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return {b, 1};

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return {a + v * ab, 3};
  }

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return {c, 2};

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return {a + w * ac, 5};
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return {b + w * (c - b), 4};
  }

  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom, w = vc * denom;
  return {a + ab * v + ac * w, 6};
}

namespace {

constexpr int kLeafTriangles = 4;

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

struct SdfQuery::Impl {
  struct Node {
    Eigen::AlignedBox3d box;
    int begin = 0, end = 0;
    int left = -1, right = -1;
  };

  TriangleMesh mesh;
  bool closed = false;
  std::vector<Vec3> face_normals;
  std::vector<Vec3> vertex_normals;
  std::unordered_map<std::uint64_t, Vec3> edge_normals;
  std::vector<int> order;
  std::vector<Node> nodes;

  explicit Impl(TriangleMesh m) : mesh(std::move(m)) {
    validate(mesh);
    if (mesh.empty()) throw Error("SdfQuery: mesh has no triangles");
    closed = is_closed(mesh);
    build_normals();
    order.resize(mesh.triangle_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::vector<Vec3> centroids(mesh.triangle_count());
    for (std::size_t t = 0; t < centroids.size(); ++t) {
      centroids[t] = (mesh.corner(t, 0) + mesh.corner(t, 1) + mesh.corner(t, 2)) / 3.0;
    }
    nodes.reserve(2 * order.size() / kLeafTriangles + 2);
    build(0, static_cast<int>(order.size()), centroids);
  }

  void build_normals() {
    const std::size_t nt = mesh.triangle_count();
    face_normals.resize(nt);
    vertex_normals.assign(mesh.vertex_count(), Vec3::Zero());
    for (std::size_t t = 0; t < nt; ++t) {
      const Vec3 n = mesh.face_normal(t);
      face_normals[t] = n;
      for (int k = 0; k < 3; ++k) {
        const Vec3 e1 = (mesh.corner(t, (k + 1) % 3) - mesh.corner(t, k)).normalized();
        const Vec3 e2 = (mesh.corner(t, (k + 2) % 3) - mesh.corner(t, k)).normalized();
        vertex_normals[mesh.triangles[t][k]] += std::acos(std::clamp(e1.dot(e2), -1.0, 1.0)) * n;
        const auto key = edge_key(mesh.triangles[t][k], mesh.triangles[t][(k + 1) % 3]);
        auto [it, inserted] = edge_normals.try_emplace(key, Vec3::Zero());
        it->second += n;
      }
    }
    for (Vec3& n : vertex_normals) {
      if (n.norm() > 0.0) n.normalize();
    }
    for (auto& [key, n] : edge_normals) {
      if (n.norm() > 0.0) n.normalize();
    }
  }

  int build(int begin, int end, const std::vector<Vec3>& centroids) {
    Node node;
    node.begin = begin;
    node.end = end;
    Eigen::AlignedBox3d centroid_box;
    for (int i = begin; i < end; ++i) {
      for (int k = 0; k < 3; ++k) node.box.extend(mesh.corner(order[i], k));
      centroid_box.extend(centroids[order[i]]);
    }
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(node);
    if (end - begin <= kLeafTriangles) return id;
    int axis;
    centroid_box.sizes().maxCoeff(&axis);
    const int mid = begin + (end - begin) / 2;
    std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end, [&](int a, int b) {
      const double ca = centroids[a][axis], cb = centroids[b][axis];
      return ca < cb || (ca == cb && a < b);
    });
    const int left = build(begin, mid, centroids);
    const int right = build(mid, end, centroids);
    nodes[id].left = left;
    nodes[id].right = right;
    return id;
  }

  struct Best {
    double d2 = std::numeric_limits<double>::infinity();
    int triangle = -1;
    TriangleClosestPoint cp;
  };

  void visit(int id, const Vec3& p, Best& best) const {
    const Node& node = nodes[id];
    if (node.box.squaredExteriorDistance(p) > best.d2) return;
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int t = order[i];
        const TriangleClosestPoint cp =
            closest_point_on_triangle(p, mesh.corner(t, 0), mesh.corner(t, 1), mesh.corner(t, 2));
        const double d2 = (p - cp.point).squaredNorm();
        if (d2 < best.d2 || (d2 == best.d2 && t < best.triangle)) best = {d2, t, cp};
      }
      return;
    }
    const double dl = nodes[node.left].box.squaredExteriorDistance(p);
    const double dr = nodes[node.right].box.squaredExteriorDistance(p);
    if (dl <= dr) {
      visit(node.left, p, best);
      visit(node.right, p, best);
    } else {
      visit(node.right, p, best);
      visit(node.left, p, best);
    }
  }

  Vec3 pseudonormal(int t, int feature) const {
    const Triangle& tri = mesh.triangles[t];
    if (feature < 3) return vertex_normals[tri[feature]];
    if (feature < 6) {
      const int k = feature - 3;
      return edge_normals.at(edge_key(tri[k], tri[(k + 1) % 3]));
    }
    return face_normals[t];
  }
};

SdfQuery::SdfQuery(TriangleMesh mesh) : impl_(std::make_shared<const Impl>(std::move(mesh))) {}

bool SdfQuery::is_signed() const { return impl_->closed; }

const TriangleMesh& SdfQuery::mesh() const { return impl_->mesh; }

SdfSample SdfQuery::sample(const Vec3& p) const {
  Impl::Best best;
  impl_->visit(0, p, best);
  SdfSample s;
  s.triangle = best.triangle;
  s.closest = best.cp.point;
  const double dist = std::sqrt(best.d2);
  const Vec3 delta = p - best.cp.point;
  const Vec3 n = impl_->pseudonormal(best.triangle, best.cp.feature);
  double sign = 1.0;
  if (impl_->closed && delta.dot(n) < 0.0) sign = -1.0;
  s.distance = sign * dist;
  if (dist > 1e-12) {
    s.gradient = sign * delta / dist;
  } else {
    s.gradient = n;
  }
  return s;
}

}  // namespace dexsynth::geometry
