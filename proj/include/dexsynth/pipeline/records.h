#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dexsynth/evaluate/stability.h"
#include "dexsynth/kinematics/pose.h"
#include "dexsynth/optimize/energy.h"

namespace dexsynth::pipeline {

/// One synthesized grasp. Paths of files written by the run (cloud, contact
/// files) are relative to the directory holding the records file; input
/// paths are stored as given by the resolved config.
struct GraspRecord {
  std::string record_id;

  std::string object_id;
  std::string object_path;
  std::string object_hash;
  std::string object_cloud;  // PLY point cloud with normals
  int object_points = 0;

  std::string hand_name;
  std::string hand_description;
  std::string hand_parts;
  std::string hand_mapping;

  std::string contact_provider;  // "heuristic" or "file"
  std::uint64_t contact_seed = 0;
  std::string contact_source;  // contact file hash for the file provider
  int contact_index = 0;
  std::string human_contact_file;
  std::string robot_contact_file;

  int init_id = -1;
  int rank = 0;
  kinematics::HandPose pose;
  double energy = 0.0;
  optimize::EnergyTerms terms;
  evaluate::StabilityReport stability;

  std::string tool_version;
  std::string timestamp;
};

nlohmann::json to_json(const GraspRecord& r);
/// Validates the schema; throws ParseError naming the offending field.
GraspRecord record_from_json(const nlohmann::json& j);

/// One JSON object per line.
void write_records(const std::filesystem::path& path, const std::vector<GraspRecord>& records);
std::vector<GraspRecord> read_records(const std::filesystem::path& path);

nlohmann::json to_json(const evaluate::StabilityReport& s);
evaluate::StabilityReport stability_from_json(const nlohmann::json& j);

/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace dexsynth::pipeline
