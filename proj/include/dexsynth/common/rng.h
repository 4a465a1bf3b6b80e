#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "dexsynth/common/math.h"

namespace dexsynth {

/// Seeded random source whose outputs are identical across standard
/// library implementations (the std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double normal();
  /// Uniform direction on the unit sphere.
  Vec3 unit_vector();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Combines several values into one well-mixed seed. Order matters.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

}  // namespace dexsynth
