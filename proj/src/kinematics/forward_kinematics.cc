#include "dexsynth/kinematics/forward_kinematics.h"

#include <algorithm>
#include <string>

#include "dexsynth/common/error.h"

namespace dexsynth::kinematics {

namespace {

void check_size(const HandModel& model, const HandPose& pose) {
  if (pose.q.size() != model.dof_count()) {
    throw Error("joint vector has " + std::to_string(pose.q.size()) + " entries, model has " +
                std::to_string(model.dof_count()) + " movable joints");
  }
}

Transform joint_motion(const Joint& joint, double q) {
  Transform m = Transform::Identity();
  if (joint.type == JointType::kRevolute) {
    m.linear() = Eigen::AngleAxisd(q, joint.axis).toRotationMatrix();
  } else if (joint.type == JointType::kPrismatic) {
    m.translation() = q * joint.axis;
  }
  return m;
}

}  // namespace

std::vector<Transform> forward_kinematics(const HandModel& model, const HandPose& pose) {
  check_size(model, pose);
  std::vector<Transform> out(model.links().size(), Transform::Identity());
  out[model.root()] = pose.wrist();
  for (int l : model.link_order()) {
    const int j = model.link(l).parent_joint;
    if (j < 0) continue;
    const Joint& joint = model.joint(j);
    const double q = joint.dof >= 0 ? pose.q[joint.dof] : 0.0;
    out[l] = out[joint.parent] * joint.origin * joint_motion(joint, q);
  }
  return out;
}

PosedHand::PosedHand(const HandModel& model, const HandPose& pose)
    : model_(&model), pose_(pose), links_(forward_kinematics(model, pose)) {
  joint_axes_.resize(model.joints().size(), Vec3::Zero());
  joint_anchors_.resize(model.joints().size(), Vec3::Zero());
  for (std::size_t j = 0; j < model.joints().size(); ++j) {
    const Joint& joint = model.joint(static_cast<int>(j));
    const Transform frame = links_[joint.parent] * joint.origin;
    joint_axes_[j] = frame.linear() * joint.axis;
    joint_anchors_[j] = frame.translation();
  }
}

Eigen::Matrix3Xd PosedHand::point_jacobian(int link, const Vec3& world_point) const {
  if (link < 0 || link >= static_cast<int>(links_.size())) throw Error("unknown link " + std::to_string(link));
  Eigen::Matrix3Xd jac = Eigen::Matrix3Xd::Zero(3, dimension());
  jac.leftCols<3>().setIdentity();
  const Mat3 rot = links_[model_->root()].linear();
  const Vec3 arm = world_point - pose_.translation;
  for (int i = 0; i < 3; ++i) jac.col(3 + i) = rot.col(i).cross(arm);
  for (int j : model_->chain_joints(link)) {
    const Joint& joint = model_->joint(j);
    if (joint.type == JointType::kRevolute) {
      jac.col(kWristDofs + joint.dof) = joint_axes_[j].cross(world_point - joint_anchors_[j]);
    } else if (joint.type == JointType::kPrismatic) {
      jac.col(kWristDofs + joint.dof) = joint_axes_[j];
    }
  }
  return jac;
}

void PosedHand::add_jacobian_transpose(int link, const Vec3& world_point, const Vec3& force,
                                       Eigen::VectorXd& grad) const {
  grad.head<3>() += force;
  // (R e_i x arm) . f = e_i . R^T (arm x f)
  const Mat3 rot = links_[model_->root()].linear();
  grad.segment<3>(3) += rot.transpose() * (world_point - pose_.translation).cross(force);
  for (int j : model_->chain_joints(link)) {
    const Joint& joint = model_->joint(j);
    if (joint.type == JointType::kRevolute) {
      grad[kWristDofs + joint.dof] += joint_axes_[j].dot((world_point - joint_anchors_[j]).cross(force));
    } else if (joint.type == JointType::kPrismatic) {
      grad[kWristDofs + joint.dof] += joint_axes_[j].dot(force);
    }
  }
}

Eigen::Matrix3Xd point_jacobian(const HandModel& model, const HandPose& pose, int link, const Vec3& body_point) {
  if (link < 0 || link >= static_cast<int>(model.links().size())) {
    throw Error("unknown link " + std::to_string(link));
  }
  PosedHand posed(model, pose);
  return posed.point_jacobian(link, posed.link_pose(link) * body_point);
}

HandPose clamp_to_limits(const HandModel& model, const HandPose& pose) {
  check_size(model, pose);
  HandPose out = pose;
  out.rotation.normalize();
  out.q = pose.q.cwiseMax(model.lower_limits()).cwiseMin(model.upper_limits());
  return out;
}

}  // namespace dexsynth::kinematics
