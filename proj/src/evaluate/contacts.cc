#include "dexsynth/evaluate/contacts.h"

#include <algorithm>
#include <cmath>

#include "dexsynth/common/error.h"
#include "dexsynth/geometry/point_index.h"

namespace dexsynth::evaluate {

ContactPointSet extract_contacts(const kinematics::LabeledHandCloud& hand, const geometry::SdfQuery& sdf, double tol,
                                 double merge_radius) {
  if (!(tol > 0)) throw Error("extract_contacts: tol must be > 0");
  std::vector<Vec3> points;
  std::vector<ContactPoint> raw;
  for (std::size_t k = 0; k < hand.points.size(); ++k) {
    const geometry::SdfSample s = sdf.sample(hand.points[k]);
    if (std::abs(s.distance) > tol) continue;
    ContactPoint c;
    c.position = hand.points[k];
    c.normal = -s.gradient.normalized();
    c.part = hand.part_of[k];
    c.depth = std::max(0.0, -s.distance);
    raw.push_back(c);
    points.push_back(c.position);
  }
  ContactPointSet out;
  if (raw.empty()) return out;
  const geometry::KdTree tree(points);
  std::vector<bool> claimed(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (claimed[i]) continue;
    claimed[i] = true;
    ContactPoint leader = raw[i];
    if (merge_radius > 0) {
      for (int j : tree.within(raw[i].position, merge_radius)) {
        if (j <= static_cast<int>(i) || claimed[j] || raw[j].part != raw[i].part) continue;
        claimed[j] = true;
        leader.depth = std::max(leader.depth, raw[j].depth);
      }
    }
    out.push_back(leader);
  }
  return out;
}

double max_penetration(const kinematics::LabeledHandCloud& hand, const geometry::SdfQuery& sdf) {
  double worst = 0.0;
  for (const Vec3& p : hand.points) worst = std::max(worst, -std::min(0.0, sdf.signed_distance(p)));
  return worst;
}

}  // namespace dexsynth::evaluate
