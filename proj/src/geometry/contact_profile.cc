#include "dexsynth/geometry/contact_profile.h"

#include "dexsynth/common/error.h"

namespace dexsynth::geometry {

double capsule_contact_value(double distance, const CapsuleParams& params) {
  if (!(params.d0 >= 0.0 && params.d0 < params.d1)) {
    throw Error("capsule_contact_value: require 0 <= d0 < d1");
  }
  if (distance <= params.d0) return 1.0;
  if (distance >= params.d1) return 0.0;
  return (params.d1 - distance) / (params.d1 - params.d0);
}

}  // namespace dexsynth::geometry
