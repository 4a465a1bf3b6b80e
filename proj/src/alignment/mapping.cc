#include "dexsynth/alignment/mapping.h"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dexsynth/common/error.h"
#include "dexsynth/contact/contact_map.h"

namespace dexsynth::alignment {

int HumanRobotMapping::robot_part(int human_label) const {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int l : groups[g]) {
      if (l == human_label) return static_cast<int>(g) + 1;
    }
  }
  return 0;
}

void validate(const HumanRobotMapping& mapping) {
  if (mapping.groups.empty()) throw ValidationError("mapping has no groups");
  if (mapping.groups.size() > 254) throw ValidationError("mapping has too many groups");
  std::set<int> seen;
  for (std::size_t g = 0; g < mapping.groups.size(); ++g) {
    if (mapping.groups[g].empty()) throw ValidationError("mapping group " + std::to_string(g + 1) + " is empty");
    for (int l : mapping.groups[g]) {
      if (l < 1 || l > contact::kHumanPartCount) {
        throw ValidationError("mapping group " + std::to_string(g + 1) + " contains invalid human label " +
                              std::to_string(l));
      }
      if (!seen.insert(l).second) {
        throw ValidationError("human label " + std::to_string(l) + " appears in more than one mapping group");
      }
    }
  }
}

HumanRobotMapping parse_mapping(std::string_view json_text) {
  HumanRobotMapping mapping;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    mapping.robot_name = doc.value("robot_name", "");
    mapping.notes = doc.value("notes", "");
    mapping.groups = doc.at("groups").get<std::vector<std::vector<int>>>();
    if (doc.contains("num_parts") && doc.at("num_parts").get<int>() != mapping.part_count()) {
      throw ValidationError("mapping num_parts " + doc.at("num_parts").dump() + " does not match " +
                            std::to_string(mapping.part_count()) + " groups");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("mapping: ") + e.what());
  }
  validate(mapping);
  return mapping;
}

HumanRobotMapping load_mapping(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mapping " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_mapping(ss.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

HumanRobotMapping identity_mapping(const std::vector<int>& labels) {
  HumanRobotMapping mapping;
  mapping.robot_name = "identity";
  for (int l : labels) mapping.groups.push_back({l});
  validate(mapping);
  return mapping;
}

}  // namespace dexsynth::alignment
