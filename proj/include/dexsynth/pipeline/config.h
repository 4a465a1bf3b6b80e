#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dexsynth/contact/provider.h"
#include "dexsynth/evaluate/stability.h"
#include "dexsynth/optimize/optimizer.h"

namespace dexsynth::pipeline {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kWorkersEnv = "DEXSYNTH_WORKERS";

struct HandConfig {
  std::filesystem::path description;  // URDF subset
  std::filesystem::path parts;        // part-label sidecar
  std::filesystem::path mapping;      // human-robot mapping
};

struct ContactConfig {
  enum class Kind { kHeuristic, kFile };
  Kind kind = Kind::kHeuristic;
  int count = 4;  // heuristic contacts per object
  contact::HeuristicParams params{};
  std::vector<std::filesystem::path> files;  // file provider: used for the object whose hash matches
};

/// Run configuration, read from JSON. Relative paths resolve against the
/// directory of the config file.
struct RunConfig {
  std::filesystem::path base_dir;
  std::vector<std::string> object_patterns;
  std::vector<std::filesystem::path> objects;  // sorted glob expansion
  int object_points = 2048;
  HandConfig hand;
  ContactConfig contact;
  optimize::EnergyWeights weights;
  optimize::OptimizerConfig optimizer;
  evaluate::StabilityParams evaluation;
  std::filesystem::path output_dir;
  int workers = 1;
  std::uint64_t seed = 0;
  bool write_trajectories = false;
};

/// Parses and range-checks; unknown keys are errors. Does not touch files.
RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);

/// Reads, parses, expands object globs and checks that every referenced file exists.
RunConfig load_run_config(const std::filesystem::path& path);

/// Expands object patterns; a pattern with no match is an error.
void resolve_objects(RunConfig& cfg);
void check_files(const RunConfig& cfg);

/// Effective configuration with all defaults filled in.
nlohmann::json to_json(const RunConfig& cfg);

/// Worker count from DEXSYNTH_WORKERS, or 1 when unset.
int default_workers();

}  // namespace dexsynth::pipeline
