#pragma once

#include <filesystem>
#include <string_view>

#include "dexsynth/kinematics/hand_model.h"

namespace dexsynth::kinematics {

/// Reads the part-label sidecar:
///   {"robot_name": ..., "num_parts": B', "part_names": {"1": "palm", ...},
///    "links": {"link_name": part_id, ...}, "palm_axis": [x, y, z]}
PartLabels parse_part_labels(std::string_view json_text);
PartLabels load_part_labels(const std::filesystem::path& path);

/// Parses the supported URDF subset: robot/link/{collision|visual}/geometry
/// with sphere, box, cylinder, capsule or mesh; robot/joint with origin,
/// axis, parent, child and limit. Collision geometry is preferred over
/// visual when a link has both. Mesh filenames resolve against mesh_dir
/// (a leading "package://" is stripped). q follows joint document order.
///
/// Throws ParseError for malformed XML, unknown geometry tags or a movable
/// joint without limits, and ValidationError for structural problems
/// (cycles, dangling references, unlabeled links).
HandModel parse_hand_description(std::string_view urdf, const PartLabels& labels,
                                 const std::filesystem::path& mesh_dir = {});

HandModel load_hand_model(const std::filesystem::path& urdf_path, const std::filesystem::path& labels_path);

}  // namespace dexsynth::kinematics
