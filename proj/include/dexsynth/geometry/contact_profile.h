#pragma once

namespace dexsynth::geometry {

/// Contact radius d0 and cutoff d1 of the per-point contact capsule. The
/// capsule is degenerated to a sphere of radius d0.
struct CapsuleParams {
  double d0 = 0.005;
  double d1 = 0.02;
};

/// 1 inside d0, 0 beyond d1, linear in between. Negative distances count as 0.
double capsule_contact_value(double distance, const CapsuleParams& params);

}  // namespace dexsynth::geometry
