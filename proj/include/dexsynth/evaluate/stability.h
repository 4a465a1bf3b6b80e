#pragma once

#include <array>
#include <cstdint>

#include "dexsynth/evaluate/contacts.h"
#include "dexsynth/geometry/object_model.h"
#include "dexsynth/kinematics/hand_model.h"
#include "dexsynth/kinematics/pose.h"

namespace dexsynth::evaluate {

using Wrench = Eigen::Matrix<double, 6, 1>;  // force (N), torque (N m)

struct StabilityParams {
  double mu = 0.5;
  double force = 2.0 * 0.1 * 9.81;  // N: twice the weight of a 100 g object
  double f_max = 10.0;              // N, per-contact normal force bound
  double tol = 0.003;               // m, contact distance tolerance
  double max_pen = 0.005;           // m, penetration gate
  int cone_edges = 8;
  double merge_radius = 0.002;  // m
  double preclose = 0.0;        // rad added to every joint toward its upper limit before testing
  double hand_density = 20000.0;
  std::uint64_t seed = 0;  // hand surface sampling
};

void validate(const StabilityParams& params);

/// Order: +x, -x, +y, -y, +z, -z.
inline constexpr std::array<const char*, 6> kDirectionNames = {"+x", "-x", "+y", "-y", "+z", "-z"};

struct StabilityReport {
  std::array<bool, 6> directions{};
  bool penetration_ok = true;
  bool success = false;
  double max_penetration = 0.0;
  int contact_count = 0;
};

/// Can contact forces inside linearized friction cones (normal component
/// <= f_max each) balance `applied` about `center`?
bool resists_wrench(const ContactPointSet& contacts, const Vec3& center, double mu, const Wrench& applied,
                    double f_max, int cone_edges = 8);

/// Friction cone edge directions (unit normal + mu * tangent) of one contact.
std::vector<Vec3> cone_edges(const Vec3& normal, double mu, int count);

StabilityReport success_test(const kinematics::HandModel& model, const kinematics::HandPose& pose,
                             const geometry::ObjectModel& object, const StabilityParams& params);

/// The same test on pre-extracted contacts.
StabilityReport success_test(const ContactPointSet& contacts, double max_penetration, const Vec3& center,
                             const StabilityParams& params);

}  // namespace dexsynth::evaluate
