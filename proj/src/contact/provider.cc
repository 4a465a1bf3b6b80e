#include "dexsynth/contact/provider.h"

#include <cmath>
#include <limits>

#include "dexsynth/common/error.h"
#include "dexsynth/common/rng.h"
#include "dexsynth/contact/contact_io.h"

namespace dexsynth::contact {

namespace {

struct Patch {
  int label;
  Vec3 direction;
};

// Object point whose direction from the centroid best matches dir.
int seed_point(const std::vector<Vec3>& points, const Vec3& centroid, const Vec3& dir) {
  int best = 0;
  double best_cos = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Vec3 v = points[k] - centroid;
    const double n = v.norm();
    const double c = n > 0.0 ? v.dot(dir) / n : -1.0;
    if (c > best_cos) {
      best_cos = c;
      best = static_cast<int>(k);
    }
  }
  return best;
}

}  // namespace

HeuristicResult generate_heuristic(const geometry::PointCloud& object, const HeuristicParams& params,
                                   std::uint64_t seed) {
  if (object.empty()) throw Error("generate_contact: empty object cloud");
  if (params.min_fingers < 2 || params.max_fingers > 4 || params.min_fingers > params.max_fingers) {
    throw Error("heuristic generator: finger count range must lie in 2..4");
  }
  Rng rng(seed);
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : object.points) centroid += p;
  centroid /= static_cast<double>(object.size());

  HeuristicResult result;
  const Vec3 a = rng.unit_vector();
  Vec3 u = rng.unit_vector();
  u = u - u.dot(a) * a;
  if (u.norm() < 1e-6) u = a.unitOrthogonal();
  u.normalize();
  const Vec3 w = a.cross(u);
  result.approach = a;
  result.finger_count =
      params.min_fingers + static_cast<int>(rng.index(static_cast<std::uint64_t>(params.max_fingers - params.min_fingers + 1)));
  result.palm = rng.uniform() < params.palm_probability;

  std::vector<Patch> patches;
  patches.push_back({kThumb3, (u + params.approach_tilt * a).normalized()});
  static constexpr int kTips[4] = {kIndex3, kMiddle3, kRing3, kPinky3};
  for (int f = 0; f < result.finger_count; ++f) {
    const double s = result.finger_count == 1
                         ? 0.0
                         : params.finger_spread * (2.0 * f / (result.finger_count - 1) - 1.0);
    patches.push_back({kTips[f], (-u + s * w + params.approach_tilt * a).normalized()});
  }
  if (result.palm) patches.push_back({kPalm, a});

  HumanContact& out = result.contact;
  out.arity = kHumanPartCount;
  out.contact.assign(object.size(), 0.0f);
  out.part.assign(object.size(), kNoPart);
  for (const Patch& patch : patches) {
    const Vec3& center = object.points[seed_point(object.points, centroid, patch.direction)];
    for (std::size_t k = 0; k < object.size(); ++k) {
      const auto v = static_cast<float>(
          geometry::capsule_contact_value((object.points[k] - center).norm(), params.profile));
      if (v > out.contact[k]) {
        out.contact[k] = v;
        out.part[k] = static_cast<std::uint8_t>(patch.label);
      }
    }
  }
  validate(out);
  return result;
}

HumanContact generate_contact(const ContactProvider& provider, const geometry::PointCloud& object) {
  if (const auto* gen = std::get_if<HeuristicGenerator>(&provider)) {
    return generate_heuristic(object, gen->params, gen->seed).contact;
  }
  const auto& loader = std::get<FileLoader>(provider);
  LoadedContact loaded = load_contact(loader.path, kHumanPartCount, object.size());
  if (loader.object_hash && loaded.object_hash != *loader.object_hash) {
    throw ValidationError("contact file " + loader.path.string() + " was made for a different object");
  }
  return std::move(loaded.map);
}

}  // namespace dexsynth::contact
