#include "dexsynth/geometry/point_index.h"

#include <algorithm>
#include <limits>

namespace dexsynth::geometry {

namespace {

constexpr int kLeafSize = 8;

double box_squared_distance(const Eigen::AlignedBox3d& box, const Vec3& q) {
  return box.squaredExteriorDistance(q);
}

}  // namespace

KdTree::KdTree(std::span<const Vec3> points) : points_(points.begin(), points.end()) {
  order_.resize(points_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
  if (!points_.empty()) {
    nodes_.reserve(2 * points_.size() / kLeafSize + 2);
    build(0, static_cast<int>(points_.size()));
  }
}

int KdTree::build(int begin, int end) {
  Node node;
  node.begin = begin;
  node.end = end;
  for (int i = begin; i < end; ++i) node.box.extend(points_[order_[i]]);
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafSize) return id;

  int axis;
  node.box.sizes().maxCoeff(&axis);
  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) {
                     const double pa = points_[a][axis], pb = points_[b][axis];
                     return pa < pb || (pa == pb && a < b);
                   });
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

KdTree::Neighbor KdTree::nearest(const Vec3& query) const {
  Neighbor best{-1, std::numeric_limits<double>::infinity()};
  if (!nodes_.empty()) nearest_impl(0, query, best);
  return best;
}

void KdTree::nearest_impl(int id, const Vec3& q, Neighbor& best) const {
  const Node& node = nodes_[id];
  // Strict comparison: an equidistant point with a lower index may still hide here.
  if (box_squared_distance(node.box, q) > best.squared_distance) return;
  if (node.left < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const int idx = order_[i];
      const double d2 = (points_[idx] - q).squaredNorm();
      if (d2 < best.squared_distance || (d2 == best.squared_distance && idx < best.index)) {
        best = {idx, d2};
      }
    }
    return;
  }
  const double dl = box_squared_distance(nodes_[node.left].box, q);
  const double dr = box_squared_distance(nodes_[node.right].box, q);
  if (dl <= dr) {
    nearest_impl(node.left, q, best);
    nearest_impl(node.right, q, best);
  } else {
    nearest_impl(node.right, q, best);
    nearest_impl(node.left, q, best);
  }
}

std::vector<int> KdTree::within(const Vec3& query, double radius) const {
  std::vector<int> out;
  if (!nodes_.empty()) within_impl(0, query, radius * radius, out);
  std::sort(out.begin(), out.end());
  return out;
}

void KdTree::within_impl(int id, const Vec3& q, double r2, std::vector<int>& out) const {
  const Node& node = nodes_[id];
  if (box_squared_distance(node.box, q) > r2) return;
  if (node.left < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      if ((points_[order_[i]] - q).squaredNorm() <= r2) out.push_back(order_[i]);
    }
    return;
  }
  within_impl(node.left, q, r2, out);
  within_impl(node.right, q, r2, out);
}

}  // namespace dexsynth::geometry
