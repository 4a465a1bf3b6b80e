#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "dexsynth/common/math.h"

namespace dexsynth::kinematics {

/// Wrist translation + rotation and the movable-joint vector.
struct HandPose {
  Vec3 translation = Vec3::Zero();
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
  Eigen::VectorXd q;

  Transform wrist() const;
};

/// Pose-space layout: [translation (3), body-frame rotation (3), joints].
inline constexpr int kWristDofs = 6;

Eigen::Quaterniond exp_map(const Vec3& rotation_vector);
/// Rotation vector with angle in [0, pi].
Vec3 log_map(const Eigen::Quaterniond& rotation);

/// translation += d[0:3]; rotation = rotation * exp(d[3:6]); q += d[6:].
HandPose apply_step(const HandPose& pose, const Eigen::VectorXd& delta);

}  // namespace dexsynth::kinematics
