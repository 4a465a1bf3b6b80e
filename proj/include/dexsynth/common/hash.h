#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace dexsynth {

/// 64-bit FNV-1a. Used for content hashes in file headers and records.
std::uint64_t fnv1a64(std::span<const std::byte> bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a64(std::string_view text);

std::string to_hex(std::uint64_t value);

/// Hash of a file's raw bytes, as 16 hex digits.
std::string file_hash(const std::filesystem::path& path);

}  // namespace dexsynth
