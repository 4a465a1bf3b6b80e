#include "dexsynth/contact/contact_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "dexsynth/common/error.h"

namespace dexsynth::contact {

namespace {

constexpr std::uint8_t kFileNoPart = 255;
constexpr const char* kFormatName = "dexsynth-contact";

static_assert(std::endian::native == std::endian::little, "contact files assume a little-endian host");

}  // namespace

void write_contact(std::ostream& out, const ContactMap& map, const std::string& object_hash) {
  validate(map);
  const nlohmann::json header = {{"format", kFormatName},
                                 {"version", kContactFormatVersion},
                                 {"n_points", map.size()},
                                 {"arity", map.arity},
                                 {"object_hash", object_hash}};
  out << header.dump() << '\n';
  out.write(reinterpret_cast<const char*>(map.contact.data()),
            static_cast<std::streamsize>(map.contact.size() * sizeof(float)));
  std::vector<std::uint8_t> ids(map.part);
  for (auto& id : ids) {
    if (id == 0) id = kFileNoPart;
  }
  out.write(reinterpret_cast<const char*>(ids.data()), static_cast<std::streamsize>(ids.size()));
  if (!out) throw Error("failed to write contact data");
}

LoadedContact read_contact(std::istream& in, std::optional<int> expected_arity,
                           std::optional<std::size_t> expected_points) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("contact file: missing header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("contact file: bad header: ") + e.what());
  }
  if (!header.is_object() || header.value("format", "") != kFormatName) {
    throw ParseError("contact file: not a dexsynth contact file");
  }
  LoadedContact result;
  std::size_t n = 0;
  try {
    if (header.at("version").get<int>() != kContactFormatVersion) {
      throw ParseError("contact file: unsupported version " + header.at("version").dump());
    }
    n = header.at("n_points").get<std::size_t>();
    result.map.arity = header.at("arity").get<int>();
    result.object_hash = header.value("object_hash", "");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("contact file: bad header field: ") + e.what());
  }
  if (expected_arity && result.map.arity != *expected_arity) {
    throw ValidationError("part arity mismatch: file has " + std::to_string(result.map.arity) + ", expected " +
                          std::to_string(*expected_arity));
  }
  if (expected_points && n != *expected_points) {
    throw ValidationError("n_points mismatch: file has " + std::to_string(n) + ", object has " +
                          std::to_string(*expected_points));
  }
  result.map.contact.resize(n);
  result.map.part.resize(n);
  in.read(reinterpret_cast<char*>(result.map.contact.data()), static_cast<std::streamsize>(n * sizeof(float)));
  in.read(reinterpret_cast<char*>(result.map.part.data()), static_cast<std::streamsize>(n));
  if (!in) throw ParseError("contact file: truncated payload");
  if (in.peek() != std::char_traits<char>::eof()) throw ParseError("contact file: trailing bytes after payload");
  for (auto& id : result.map.part) {
    if (id == kFileNoPart) id = 0;
  }
  validate(result.map);
  return result;
}

void save_contact(const std::filesystem::path& path, const ContactMap& map, const std::string& object_hash) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_contact(out, map, object_hash);
}

LoadedContact load_contact(const std::filesystem::path& path, std::optional<int> expected_arity,
                           std::optional<std::size_t> expected_points) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open contact file " + path.string());
  try {
    return read_contact(in, expected_arity, expected_points);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace dexsynth::contact
