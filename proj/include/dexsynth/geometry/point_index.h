#pragma once

#include <span>
#include <vector>

#include "dexsynth/common/math.h"

namespace dexsynth::geometry {

/// Static 3-d tree over a point set. Queries are read-only and thread-safe.
class KdTree {
 public:
  struct Neighbor {
    int index = -1;
    double squared_distance = 0.0;
  };

  KdTree() = default;
  explicit KdTree(std::span<const Vec3> points);

  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }
  const Vec3& point(int i) const { return points_[i]; }

  /// Nearest point; among equidistant points the lowest index wins.
  Neighbor nearest(const Vec3& query) const;

  /// Indices of all points within radius (inclusive), in ascending order.
  std::vector<int> within(const Vec3& query, double radius) const;

 private:
  struct Node {
    Eigen::AlignedBox3d box;
    int begin = 0, end = 0;  // range into order_
    int left = -1, right = -1;
  };

  int build(int begin, int end);
  void nearest_impl(int node, const Vec3& q, Neighbor& best) const;
  void within_impl(int node, const Vec3& q, double r2, std::vector<int>& out) const;

  std::vector<Vec3> points_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace dexsynth::geometry
