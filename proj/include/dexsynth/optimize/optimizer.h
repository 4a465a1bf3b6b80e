#pragma once

#include <cstdint>
#include <vector>

#include "dexsynth/common/rng.h"
#include "dexsynth/optimize/energy.h"

namespace dexsynth::optimize {

struct OptimizerConfig {
  int iterations = 200;
  double step_translation = 0.001;  // m, largest wrist translation per iteration
  double step_rotation = 0.01;      // rad
  double step_joint = 0.02;         // rad (or m for prismatic joints)
  int n_init_poses = 16;
  double init_radius = 0.0;  // m; <= 0 means 1.5 x object bounding radius
  int top_k = 4;
  std::uint64_t seed = 0;
  double hand_density = 20000.0;  // hand surface samples per m^2
  int workers = 1;
};

void validate(const OptimizerConfig& cfg);

struct GraspCandidate {
  kinematics::HandPose pose;
  double energy = 0.0;
  EnergyTerms terms;
  std::vector<double> trajectory;  // energy before each iteration, then the final energy
  int init_id = -1;
  bool valid = true;
};

/// Wrist positions uniform on a sphere around the centroid, palm axis facing
/// the centroid, uniform roll, joints at mid-range.
std::vector<kinematics::HandPose> sample_initial_wrist_poses(const Vec3& centroid, double radius,
                                                             const kinematics::HandModel& model, int count,
                                                             std::uint64_t seed);

/// Projected descent: each block (translation, rotation, joints) moves along
/// its normalized negative gradient by at most its step size, scaled by a
/// backtracking factor that halves until the energy decreases sufficiently.
/// Stops early when no decrease is found.
GraspCandidate optimize_grasp(const EnergyModel& energy, const kinematics::HandPose& init,
                              const OptimizerConfig& cfg);

}  // namespace dexsynth::optimize
