#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dexsynth {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Transform = Eigen::Isometry3d;

}  // namespace dexsynth
