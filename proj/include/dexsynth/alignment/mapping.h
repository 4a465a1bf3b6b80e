#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dexsynth::alignment {

/// Partition of (a subset of) the 16 human part labels into robot parts.
/// Robot part id = group index + 1.
struct HumanRobotMapping {
  std::string robot_name;
  std::vector<std::vector<int>> groups;
  std::string notes;

  int part_count() const { return static_cast<int>(groups.size()); }
  /// Robot part owning a human label, or 0 if the label is unmapped.
  int robot_part(int human_label) const;
};

/// Groups non-empty and pairwise disjoint, labels in 1..16.
void validate(const HumanRobotMapping& mapping);

/// JSON: {"robot_name": str, "num_parts": B', "groups": [[labels], ...], "notes": str}
HumanRobotMapping parse_mapping(std::string_view json_text);
HumanRobotMapping load_mapping(const std::filesystem::path& path);

/// One group per listed label.
HumanRobotMapping identity_mapping(const std::vector<int>& labels);

}  // namespace dexsynth::alignment
