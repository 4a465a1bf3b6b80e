#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <variant>

#include "dexsynth/contact/contact_map.h"
#include "dexsynth/geometry/contact_profile.h"
#include "dexsynth/geometry/point_cloud.h"

namespace dexsynth::contact {

struct HeuristicParams {
  int min_fingers = 2;           // opposing fingertip patches, 2..4
  int max_fingers = 4;
  double palm_probability = 0.5;  // chance of adding a palm patch at the approach pole
  double finger_spread = 0.6;     // lateral spread of opposing patches (unit-free slope)
  double approach_tilt = 0.25;    // how far patches lean toward the approach side
  geometry::CapsuleParams profile{};
};

/// Synthetic human-like contacts: thumb tip patch and 2-4 opposing fingertip
/// patches around a random approach direction.
struct HeuristicGenerator {
  std::uint64_t seed = 0;
  HeuristicParams params{};
};

/// Reads a contact file; its arity must be 16.
struct FileLoader {
  std::filesystem::path path;
  std::optional<std::string> object_hash;  // checked against the file header when set
};

using ContactProvider = std::variant<HeuristicGenerator, FileLoader>;

HumanContact generate_contact(const ContactProvider& provider, const geometry::PointCloud& object);

/// The heuristic generator, exposed for tests. The returned approach is the
/// unit direction (from the object centroid) of the thumb side.
struct HeuristicResult {
  HumanContact contact;
  Vec3 approach = Vec3::UnitZ();
  int finger_count = 0;
  bool palm = false;
};
HeuristicResult generate_heuristic(const geometry::PointCloud& object, const HeuristicParams& params,
                                   std::uint64_t seed);

}  // namespace dexsynth::contact
