#include "dexsynth/optimize/synthesize.h"

#include <algorithm>

#include "dexsynth/alignment/merge.h"
#include "dexsynth/common/error.h"

namespace dexsynth::optimize {

SynthesisResult synthesize(const geometry::ObjectModel& object, const contact::HumanContact& contact,
                           const kinematics::HandModel& model, const alignment::HumanRobotMapping& mapping,
                           const EnergyWeights& weights, const OptimizerConfig& cfg) {
  validate(cfg);
  validate(weights);
  if (mapping.part_count() != model.part_count()) {
    throw Error("part arity mismatch: mapping has " + std::to_string(mapping.part_count()) + " groups, hand has " +
                std::to_string(model.part_count()) + " parts");
  }
  SynthesisResult result;
  result.robot_contact = alignment::align_contact(contact, object.cloud.points, mapping);

  kinematics::HandPose rest;
  rest.q = Eigen::VectorXd::Zero(model.dof_count());
  const EnergyModel energy(object, result.robot_contact, model, weights,
                           kinematics::hand_surface_points(model, rest, cfg.hand_density, derive_seed({cfg.seed, 1})));

  const double radius = cfg.init_radius > 0 ? cfg.init_radius : 1.5 * object.bounding_radius;
  const auto inits =
      sample_initial_wrist_poses(object.centroid, radius, model, cfg.n_init_poses, derive_seed({cfg.seed, 2}));

  std::vector<GraspCandidate> all(inits.size());
  parallel_for(static_cast<int>(inits.size()), cfg.workers, [&](int i) {
    all[i] = optimize_grasp(energy, inits[i], cfg);
    all[i].init_id = i;
  });

  std::vector<GraspCandidate> valid;
  for (auto& c : all) {
    if (c.valid) {
      valid.push_back(std::move(c));
    } else {
      ++result.invalid;
    }
  }
  if (valid.empty()) throw Error("no valid grasp");
  std::sort(valid.begin(), valid.end(), [](const GraspCandidate& a, const GraspCandidate& b) {
    return a.energy != b.energy ? a.energy < b.energy : a.init_id < b.init_id;
  });
  if (static_cast<int>(valid.size()) > cfg.top_k) valid.resize(cfg.top_k);
  result.grasps = std::move(valid);
  return result;
}

}  // namespace dexsynth::optimize
