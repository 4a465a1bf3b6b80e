#pragma once

#include <vector>

#include "dexsynth/kinematics/hand_model.h"
#include "dexsynth/kinematics/pose.h"

namespace dexsynth::kinematics {

/// World transform of every link (indexed like HandModel::links()).
/// Root = wrist; child = parent * joint origin * joint motion(q).
std::vector<Transform> forward_kinematics(const HandModel& model, const HandPose& pose);

/// A model evaluated at one pose, with the per-joint world axes cached so
/// Jacobian products are cheap.
class PosedHand {
 public:
  PosedHand(const HandModel& model, const HandPose& pose);

  const HandModel& model() const { return *model_; }
  const HandPose& pose() const { return pose_; }
  const Transform& link_pose(int link) const { return links_[link]; }
  const std::vector<Transform>& link_poses() const { return links_; }
  int dimension() const { return kWristDofs + model_->dof_count(); }

  /// d(world point)/d(pose) for a point rigidly attached to `link`.
  Eigen::Matrix3Xd point_jacobian(int link, const Vec3& world_point) const;

  /// grad += J(link, world_point)^T * force.
  void add_jacobian_transpose(int link, const Vec3& world_point, const Vec3& force, Eigen::VectorXd& grad) const;

 private:
  const HandModel* model_;
  HandPose pose_;
  std::vector<Transform> links_;
  std::vector<Vec3> joint_axes_;     // world frame, per joint
  std::vector<Vec3> joint_anchors_;  // world frame, per joint
};

/// 3 x (6 + dofs) Jacobian of the world position of `body_point` (in the
/// link frame). Rotation columns are body-frame angular velocity of the wrist.
Eigen::Matrix3Xd point_jacobian(const HandModel& model, const HandPose& pose, int link, const Vec3& body_point);

/// Clamps q into the joint limits and renormalizes the wrist quaternion.
HandPose clamp_to_limits(const HandModel& model, const HandPose& pose);

}  // namespace dexsynth::kinematics
