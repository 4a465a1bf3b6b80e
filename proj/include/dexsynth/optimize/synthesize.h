#pragma once

#include <vector>

#include "dexsynth/alignment/mapping.h"
#include "dexsynth/optimize/optimizer.h"

namespace dexsynth::optimize {

struct SynthesisResult {
  contact::RobotContact robot_contact;
  std::vector<GraspCandidate> grasps;  // ascending energy, at most top_k
  int invalid = 0;
};

/// Aligns the human contact to the hand, optimizes from n_init_poses sampled
/// wrist poses (in parallel when cfg.workers > 1) and keeps the top_k lowest
/// energies. Ties are broken by init id so the result is worker-independent.
/// Throws "no valid grasp" when every candidate is invalid.
SynthesisResult synthesize(const geometry::ObjectModel& object, const contact::HumanContact& contact,
                           const kinematics::HandModel& model, const alignment::HumanRobotMapping& mapping,
                           const EnergyWeights& weights, const OptimizerConfig& cfg);

/// Runs fn(i) for i in [0, count) on `workers` threads.
template <typename F>
void parallel_for(int count, int workers, F&& fn);

}  // namespace dexsynth::optimize

#include "dexsynth/optimize/parallel.inl"
