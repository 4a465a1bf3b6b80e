#include "dexsynth/kinematics/pose.h"

#include <cmath>

#include "dexsynth/common/error.h"

namespace dexsynth::kinematics {

Transform HandPose::wrist() const {
  Transform t = Transform::Identity();
  t.linear() = rotation.normalized().toRotationMatrix();
  t.translation() = translation;
  return t;
}

Eigen::Quaterniond exp_map(const Vec3& rotation_vector) {
  const double angle = rotation_vector.norm();
  if (angle < 1e-12) {
    Eigen::Quaterniond q(1.0, 0.5 * rotation_vector.x(), 0.5 * rotation_vector.y(), 0.5 * rotation_vector.z());
    return q.normalized();
  }
  return Eigen::Quaterniond(Eigen::AngleAxisd(angle, rotation_vector / angle));
}

Vec3 log_map(const Eigen::Quaterniond& rotation) {
  Eigen::Quaterniond q = rotation.normalized();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  const double s = q.vec().norm();
  if (s < 1e-12) return 2.0 * q.vec();
  const double angle = 2.0 * std::atan2(s, q.w());
  return angle * q.vec() / s;
}

HandPose apply_step(const HandPose& pose, const Eigen::VectorXd& delta) {
  if (delta.size() != kWristDofs + pose.q.size()) throw Error("apply_step: delta has wrong size");
  HandPose out = pose;
  out.translation += delta.head<3>();
  out.rotation = (pose.rotation * exp_map(delta.segment<3>(3))).normalized();
  out.q += delta.tail(pose.q.size());
  return out;
}

}  // namespace dexsynth::kinematics
