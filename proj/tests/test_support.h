#pragma once

#include <filesystem>
#include <string>

#include "dexsynth/geometry/mesh_io.h"
#include "dexsynth/geometry/object_model.h"
#include "dexsynth/kinematics/urdf_parser.h"

namespace dexsynth::testing {

inline std::filesystem::path data_dir() { return DEXSYNTH_DATA_DIR; }
inline std::filesystem::path test_data_dir() { return DEXSYNTH_TEST_DATA_DIR; }

/// "tri_finger", "quad_finger" or "penta_finger".
inline kinematics::HandModel fixture_hand(const std::string& name) {
  const auto dir = data_dir() / "hands";
  return kinematics::load_hand_model(dir / (name + ".urdf"), dir / (name + ".parts.json"));
}

inline geometry::ObjectModel fixture_object(const std::string& file, std::size_t n = 2048, std::uint64_t seed = 3) {
  return geometry::make_object_model(geometry::load_mesh(data_dir() / "objects" / file), n, seed, file);
}

/// Fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dexsynth_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace dexsynth::testing
