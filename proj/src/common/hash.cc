#include "dexsynth/common/hash.h"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <vector>

#include "dexsynth/common/error.h"

namespace dexsynth {

std::uint64_t fnv1a64(std::span<const std::byte> bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (std::byte b : bytes) {
    h ^= static_cast<std::uint64_t>(b);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a64(std::string_view text) {
  return fnv1a64(std::as_bytes(std::span(text.data(), text.size())));
}

std::string to_hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string file_hash(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return to_hex(fnv1a64(std::string_view(data.data(), data.size())));
}

}  // namespace dexsynth
