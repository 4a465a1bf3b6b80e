#include "dexsynth/kinematics/hand_cloud.h"

#include <cmath>

#include "dexsynth/common/error.h"
#include "dexsynth/common/rng.h"
#include "dexsynth/kinematics/shape.h"

namespace dexsynth::kinematics {

void LabeledHandCloud::repose(const PosedHand& hand) {
  points.resize(body_points.size());
  for (std::size_t i = 0; i < body_points.size(); ++i) points[i] = hand.link_pose(link_of[i]) * body_points[i];
}

LabeledHandCloud hand_surface_points(const HandModel& model, const HandPose& pose, double density,
                                     std::uint64_t seed) {
  if (!(density > 0.0)) throw Error("hand_surface_points: density must be positive");
  LabeledHandCloud cloud;
  for (int l = 0; l < static_cast<int>(model.links().size()); ++l) {
    const Link& link = model.link(l);
    for (std::size_t g = 0; g < link.geometries.size(); ++g) {
      const Geometry& geom = link.geometries[g];
      const double area = shape_surface_area(geom.shape);
      if (!(area > 1e-12)) throw Error("link '" + link.name + "' has zero-area geometry");
      const auto n = static_cast<std::size_t>(std::max(1.0, std::round(area * density)));
      // Per-geometry stream so one link's sampling never shifts another's.
      Rng rng(derive_seed({seed, static_cast<std::uint64_t>(l), g}));
      std::vector<Vec3> local;
      local.reserve(n);
      sample_shape_surface(geom.shape, n, rng, local);
      for (const Vec3& p : local) {
        cloud.body_points.push_back(geom.origin * p);
        cloud.link_of.push_back(l);
        cloud.part_of.push_back(link.part);
      }
    }
  }
  cloud.repose(PosedHand(model, pose));
  return cloud;
}

}  // namespace dexsynth::kinematics
