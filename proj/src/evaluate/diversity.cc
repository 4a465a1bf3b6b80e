#include "dexsynth/evaluate/diversity.h"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "dexsynth/common/error.h"

namespace dexsynth::evaluate {

namespace {

// Shifted by the first sample so identical inputs give exactly zero.
double population_std(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x - v.front();
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - v.front() - mean) * (x - v.front() - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

}  // namespace

Eigen::Quaterniond mean_rotation(const std::vector<Eigen::Quaterniond>& rotations) {
  if (rotations.empty()) throw Error("mean_rotation: no rotations");
  Eigen::Matrix4d scatter = Eigen::Matrix4d::Zero();
  for (const auto& q : rotations) scatter += q.coeffs() * q.coeffs().transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(scatter);
  const Eigen::Vector4d ref = solver.eigenvectors().col(3);
  Eigen::Vector4d sum = Eigen::Vector4d::Zero();
  for (const auto& q : rotations) sum += q.coeffs().dot(ref) < 0.0 ? Eigen::Vector4d(-q.coeffs()) : q.coeffs();
  Eigen::Quaterniond mean;
  mean.coeffs() = sum.norm() > 0.0 ? Eigen::Vector4d(sum.normalized()) : ref;
  return mean;
}

DiversityResult diversity(const std::vector<kinematics::HandPose>& poses) {
  if (poses.size() < 2) throw Error("diversity needs at least 2 grasps");
  const Eigen::Index dofs = poses.front().q.size();
  for (const auto& p : poses) {
    if (p.q.size() != dofs) throw Error("diversity: grasps have different joint counts");
  }
  std::vector<Eigen::Quaterniond> rotations;
  for (const auto& p : poses) rotations.push_back(p.rotation.normalized());
  const Eigen::Quaterniond inv_mean = mean_rotation(rotations).conjugate();

  const std::size_t dims = 3 + static_cast<std::size_t>(dofs);
  std::vector<std::vector<double>> columns(dims);
  std::vector<std::vector<double>> translation(3);
  for (std::size_t i = 0; i < poses.size(); ++i) {
    const Vec3 r = kinematics::log_map(inv_mean * rotations[i]);
    for (int d = 0; d < 3; ++d) {
      columns[d].push_back(r[d]);
      translation[d].push_back(poses[i].translation[d]);
    }
    for (Eigen::Index j = 0; j < dofs; ++j) columns[3 + j].push_back(poses[i].q[j]);
  }
  DiversityResult out;
  for (const auto& c : columns) out.angular += population_std(c);
  out.angular /= static_cast<double>(dims);
  for (const auto& c : translation) out.translation += population_std(c);
  out.translation /= 3.0;
  return out;
}

}  // namespace dexsynth::evaluate
