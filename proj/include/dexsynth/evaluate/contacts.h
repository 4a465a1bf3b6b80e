#pragma once

#include <vector>

#include "dexsynth/geometry/sdf.h"
#include "dexsynth/kinematics/hand_cloud.h"

namespace dexsynth::evaluate {

struct ContactPoint {
  Vec3 position = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();  // unit, pointing into the object
  int part = 0;
  double depth = 0.0;  // penetration, >= 0
};

using ContactPointSet = std::vector<ContactPoint>;

/// Hand samples with |sdf| <= tol become contacts. Duplicates are merged by
/// leader clustering in sample order: each unclaimed sample claims every later
/// unclaimed sample of the same part within merge_radius; the leader's
/// position and normal are kept and the cluster's deepest penetration is used.
ContactPointSet extract_contacts(const kinematics::LabeledHandCloud& hand, const geometry::SdfQuery& sdf, double tol,
                                 double merge_radius = 0.002);

/// Deepest penetration of any hand sample, max(0, -sdf).
double max_penetration(const kinematics::LabeledHandCloud& hand, const geometry::SdfQuery& sdf);

}  // namespace dexsynth::evaluate
