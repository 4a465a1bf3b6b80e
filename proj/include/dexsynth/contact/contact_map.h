#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dexsynth::contact {

/// Human hand part labels. 0 means "no part".
enum HumanPart : std::uint8_t {
  kNoPart = 0,
  kPalm = 1,
  kThumb1, kThumb2, kThumb3,
  kIndex1, kIndex2, kIndex3,
  kMiddle1, kMiddle2, kMiddle3,
  kRing1, kRing2, kRing3,
  kPinky1, kPinky2, kPinky3,
};

inline constexpr int kHumanPartCount = 16;

/// "palm", "thumb1", ..., "pinky3". Throws for labels outside 1..16.
const std::string& human_part_name(int label);

/// Object-centric contact representation: one contact value in [0,1] and one
/// part id (0 = none, else 1..arity) per object point. The part id is the
/// index of the hot entry of the one-hot part row.
struct ContactMap {
  int arity = kHumanPartCount;
  std::vector<float> contact;
  std::vector<std::uint8_t> part;

  std::size_t size() const { return contact.size(); }
  double mass() const;
};

using HumanContact = ContactMap;
using RobotContact = ContactMap;

/// Checks value ranges, part ids and the "no part only where contact = 0" rule.
void validate(const ContactMap& map);

/// Builds a map from dense part rows (n x arity, each row one-hot or all
/// zero). Rows with more than one nonzero entry are rejected.
ContactMap contact_from_rows(int arity, std::vector<float> contact, const std::vector<std::vector<float>>& rows);

/// Dense n x arity one-hot rows.
std::vector<std::vector<float>> part_rows(const ContactMap& map);

}  // namespace dexsynth::contact
