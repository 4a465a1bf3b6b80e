#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "dexsynth/contact/contact_map.h"

namespace dexsynth::contact {

inline constexpr int kContactFormatVersion = 1;

/// File layout: one line of JSON header
///   {"format":"dexsynth-contact","version":1,"n_points":N,"arity":B,"object_hash":"..."}
/// followed by N little-endian float32 contact values and N uint8 part ids
/// (255 = no part).
struct LoadedContact {
  ContactMap map;
  std::string object_hash;
};

void write_contact(std::ostream& out, const ContactMap& map, const std::string& object_hash);
LoadedContact read_contact(std::istream& in, std::optional<int> expected_arity = std::nullopt,
                           std::optional<std::size_t> expected_points = std::nullopt);

void save_contact(const std::filesystem::path& path, const ContactMap& map, const std::string& object_hash);
LoadedContact load_contact(const std::filesystem::path& path, std::optional<int> expected_arity = std::nullopt,
                           std::optional<std::size_t> expected_points = std::nullopt);

}  // namespace dexsynth::contact
