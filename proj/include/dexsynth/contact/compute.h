#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dexsynth/contact/contact_map.h"
#include "dexsynth/geometry/contact_profile.h"
#include "dexsynth/kinematics/hand_cloud.h"

namespace dexsynth::contact {

/// Capsule contact value of each object point against its nearest hand point.
std::vector<double> compute_contact_map(std::span<const Vec3> object, std::span<const Vec3> hand,
                                        const geometry::CapsuleParams& params = {});

/// Part of the nearest hand point when it lies within max_range, else 0.
std::vector<std::uint8_t> compute_part_map(std::span<const Vec3> object, const kinematics::LabeledHandCloud& hand,
                                           double max_range);

/// Contact + part map of a posed robot hand (arity = the model's part count),
/// with max_range = params.d1.
RobotContact contact_from_hand(std::span<const Vec3> object, const kinematics::LabeledHandCloud& hand, int arity,
                               const geometry::CapsuleParams& params = {});

}  // namespace dexsynth::contact
