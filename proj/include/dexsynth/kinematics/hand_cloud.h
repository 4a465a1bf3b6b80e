#pragma once

#include <cstdint>
#include <vector>

#include "dexsynth/kinematics/forward_kinematics.h"

namespace dexsynth::kinematics {

/// Surface samples of a hand, each tied to a link and robot part. Body-frame
/// samples are drawn once; repose() moves them with forward kinematics.
struct LabeledHandCloud {
  std::vector<Vec3> body_points;  // link frame
  std::vector<int> link_of;
  std::vector<int> part_of;
  std::vector<Vec3> points;  // world frame at the last pose

  std::size_t size() const { return body_points.size(); }
  void repose(const PosedHand& hand);
};

/// Samples max(1, round(area * density)) points on each link geometry.
/// Deterministic per seed. Throws for zero-area geometry or density <= 0.
LabeledHandCloud hand_surface_points(const HandModel& model, const HandPose& pose, double density,
                                     std::uint64_t seed);

}  // namespace dexsynth::kinematics
