#pragma once

#include <vector>

#include "dexsynth/contact/contact_map.h"
#include "dexsynth/geometry/mesh_io.h"
#include "dexsynth/kinematics/hand_model.h"
#include "dexsynth/kinematics/pose.h"

namespace dexsynth::pipeline {

/// Linear blue (c = 0) to red (c = 1) color ramp.
geometry::Rgb heat_color(double c);

/// Tessellated hand geometry in world coordinates.
geometry::TriangleMesh posed_hand_mesh(const kinematics::HandModel& model, const kinematics::HandPose& pose);

/// Hand mesh followed by the object mesh in one OBJ.
void write_scene_obj(std::ostream& out, const kinematics::HandModel& model, const kinematics::HandPose& pose,
                     const geometry::TriangleMesh& object);

void write_contact_heatmap(std::ostream& out, const geometry::PointCloud& cloud, const contact::ContactMap& map);

}  // namespace dexsynth::pipeline
