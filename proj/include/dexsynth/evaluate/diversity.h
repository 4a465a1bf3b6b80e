#pragma once

#include <vector>

#include "dexsynth/kinematics/pose.h"

namespace dexsynth::evaluate {

struct DiversityResult {
  double angular = 0.0;      // rad: mean per-dimension std of [wrist rotation vector, joints]
  double translation = 0.0;  // m: mean per-axis std of wrist translation
};

/// Wrist rotations are expressed as rotation vectors relative to a mean
/// rotation: the normalized component-wise mean of the quaternions after
/// flipping each onto the hemisphere of their principal direction.
/// Population standard deviation. Throws for fewer than 2 poses.
DiversityResult diversity(const std::vector<kinematics::HandPose>& poses);

/// The mean rotation used above.
Eigen::Quaterniond mean_rotation(const std::vector<Eigen::Quaterniond>& rotations);

}  // namespace dexsynth::evaluate
