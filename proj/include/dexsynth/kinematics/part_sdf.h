#pragma once

#include "dexsynth/kinematics/forward_kinematics.h"

namespace dexsynth::kinematics {

struct PartDistance {
  double distance = 0.0;
  Vec3 gradient = Vec3::UnitZ();  // world frame, d(distance)/d(point)
  int link = -1;                  // link owning the closest geometry
};

/// Minimum over the part's link geometries of their signed distance to the
/// world point p. Throws for an unknown part or a part with no geometry.
PartDistance part_distance(const PosedHand& hand, int part, const Vec3& p);

/// Convenience form evaluating forward kinematics internally.
double part_sdf(const HandModel& model, const HandPose& pose, int part, const Vec3& p);

}  // namespace dexsynth::kinematics
