#include "dexsynth/contact/compute.h"

#include <cmath>

#include "dexsynth/common/error.h"
#include "dexsynth/geometry/point_index.h"

namespace dexsynth::contact {

std::vector<double> compute_contact_map(std::span<const Vec3> object, std::span<const Vec3> hand,
                                        const geometry::CapsuleParams& params) {
  if (object.empty() || hand.empty()) throw Error("compute_contact_map: empty point cloud");
  const geometry::KdTree tree(hand);
  std::vector<double> out(object.size());
  for (std::size_t k = 0; k < object.size(); ++k) {
    out[k] = geometry::capsule_contact_value(std::sqrt(tree.nearest(object[k]).squared_distance), params);
  }
  return out;
}

std::vector<std::uint8_t> compute_part_map(std::span<const Vec3> object, const kinematics::LabeledHandCloud& hand,
                                           double max_range) {
  if (object.empty() || hand.points.empty()) throw Error("compute_part_map: empty point cloud");
  const geometry::KdTree tree(hand.points);
  std::vector<std::uint8_t> out(object.size(), 0);
  for (std::size_t k = 0; k < object.size(); ++k) {
    const auto nn = tree.nearest(object[k]);
    if (nn.squared_distance <= max_range * max_range) out[k] = static_cast<std::uint8_t>(hand.part_of[nn.index]);
  }
  return out;
}

RobotContact contact_from_hand(std::span<const Vec3> object, const kinematics::LabeledHandCloud& hand, int arity,
                               const geometry::CapsuleParams& params) {
  const std::vector<double> values = compute_contact_map(object, hand.points, params);
  RobotContact out;
  out.arity = arity;
  out.part = compute_part_map(object, hand, params.d1);
  out.contact.resize(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) out.contact[k] = static_cast<float>(values[k]);
  validate(out);
  return out;
}

}  // namespace dexsynth::contact
