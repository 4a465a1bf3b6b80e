#include "dexsynth/kinematics/part_sdf.h"

#include <limits>
#include <string>

#include "dexsynth/common/error.h"
#include "dexsynth/kinematics/shape.h"

namespace dexsynth::kinematics {

PartDistance part_distance(const PosedHand& hand, int part, const Vec3& p) {
  const HandModel& model = hand.model();
  if (part < 1 || part > model.part_count()) throw Error("unknown part id " + std::to_string(part));
  PartDistance best;
  best.distance = std::numeric_limits<double>::infinity();
  for (int l : model.part_links(part)) {
    const Transform& link_pose = hand.link_pose(l);
    for (const Geometry& g : model.link(l).geometries) {
      const Transform frame = link_pose * g.origin;
      const ShapeDistance d = shape_distance(g.shape, frame.inverse() * p);
      if (d.distance < best.distance) best = {d.distance, frame.linear() * d.gradient, l};
    }
  }
  if (best.link < 0) throw Error("part " + std::to_string(part) + " has no geometry");
  return best;
}

double part_sdf(const HandModel& model, const HandPose& pose, int part, const Vec3& p) {
  return part_distance(PosedHand(model, pose), part, p).distance;
}

}  // namespace dexsynth::kinematics
