#include "dexsynth/contact/contact_map.h"

#include <array>
#include <cmath>

#include "dexsynth/common/error.h"

namespace dexsynth::contact {

const std::string& human_part_name(int label) {
  static const std::array<std::string, kHumanPartCount> names = {
      "palm",    "thumb1",  "thumb2",  "thumb3", "index1", "index2", "index3", "middle1",
      "middle2", "middle3", "ring1",   "ring2",  "ring3",  "pinky1", "pinky2", "pinky3"};
  if (label < 1 || label > kHumanPartCount) throw Error("invalid human part label " + std::to_string(label));
  return names[label - 1];
}

double ContactMap::mass() const {
  double s = 0.0;
  for (float c : contact) s += c;
  return s;
}

void validate(const ContactMap& map) {
  if (map.arity < 1 || map.arity > 254) throw ValidationError("part arity must be in 1..254");
  if (map.part.size() != map.contact.size()) {
    throw ValidationError("contact has " + std::to_string(map.contact.size()) + " values but part map has " +
                          std::to_string(map.part.size()));
  }
  for (std::size_t k = 0; k < map.contact.size(); ++k) {
    const float c = map.contact[k];
    if (!std::isfinite(c) || c < 0.0f || c > 1.0f) {
      throw ValidationError("contact value " + std::to_string(c) + " at point " + std::to_string(k) +
                            " outside [0,1]");
    }
    if (map.part[k] > map.arity) {
      throw ValidationError("part id " + std::to_string(map.part[k]) + " at point " + std::to_string(k) +
                            " exceeds arity " + std::to_string(map.arity));
    }
    if (map.part[k] == 0 && c > 0.0f) {
      throw ValidationError("point " + std::to_string(k) + " has contact but no part");
    }
  }
}

ContactMap contact_from_rows(int arity, std::vector<float> contact, const std::vector<std::vector<float>>& rows) {
  if (rows.size() != contact.size()) throw ValidationError("part rows and contact values differ in length");
  ContactMap map;
  map.arity = arity;
  map.contact = std::move(contact);
  map.part.assign(rows.size(), 0);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (static_cast<int>(rows[k].size()) != arity) throw ValidationError("part arity mismatch");
    int hot = 0;
    for (int b = 0; b < arity; ++b) {
      const float v = rows[k][b];
      if (v == 0.0f) continue;
      if (v != 1.0f || hot != 0) {
        throw ValidationError("part row " + std::to_string(k) + " is not one-hot");
      }
      hot = b + 1;
    }
    map.part[k] = static_cast<std::uint8_t>(hot);
  }
  validate(map);
  return map;
}

std::vector<std::vector<float>> part_rows(const ContactMap& map) {
  std::vector<std::vector<float>> rows(map.size(), std::vector<float>(map.arity, 0.0f));
  for (std::size_t k = 0; k < map.size(); ++k) {
    if (map.part[k] > 0) rows[k][map.part[k] - 1] = 1.0f;
  }
  return rows;
}

}  // namespace dexsynth::contact
