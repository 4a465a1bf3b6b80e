#pragma once

#include <span>
#include <vector>

#include "dexsynth/alignment/mapping.h"
#include "dexsynth/common/error.h"
#include "dexsynth/common/math.h"
#include "dexsynth/contact/contact_map.h"

namespace dexsynth::alignment {

/// Raised by projection_direction when the two unit directions cancel.
class DegenerateBisector : public Error {
 public:
  DegenerateBisector() : Error("degenerate bisector") {}
};

Vec3 object_centroid(std::span<const Vec3> points);

/// Contact-weighted centroid. Throws "empty part" when the weights sum to 0.
Vec3 part_centroid(std::span<const Vec3> points, std::span<const double> slice);

/// Contact values of the points labeled `label`, 0 elsewhere.
std::vector<double> part_contact_slice(const contact::ContactMap& c, int label);

/// normalize(unit(ox - mo) + unit(m_other - mo)).
Vec3 projection_direction(const Vec3& mo, const Vec3& ox, const Vec3& m_other);

/// Index of the point nearest to the ray mo + t v (t > 0) among points with
/// (o - mo) . v > 0; lowest index on ties; -1 when the half-space is empty.
int nearest_to_ray(std::span<const Vec3> points, const Vec3& mo, const Vec3& v);

struct RemapResult {
  std::vector<double> slice;       // remapped contact, may exceed 1 where mass collides
  std::vector<int> target;         // per source point: destination index, -1 if no mass or skipped
  std::vector<Vec3> direction;     // per source point with mass: projection direction (zero if degenerate)
  int degenerate = 0;              // points kept in place because the bisector was undefined
  int skipped = 0;                 // points dropped because the forward half-space was empty
};

/// Moves each contact point of `source` onto the object point nearest to the
/// ray from mo along projection_direction(mo, o_x, m_other).
RemapResult remap_part(std::span<const Vec3> points, std::span<const double> source, const Vec3& mo,
                       const Vec3& m_other);

/// Union of two remapped slices: sum where both present, clamped to 1.
std::vector<double> merge_pair(std::span<const double> a, std::span<const double> b);

/// Order in which merge_group folded its inputs, for inspection.
struct FoldStep {
  int first = -1;   // index into the working list at the time of the merge
  int second = -1;
};

/// Folds the slices of `labels` pairwise, closest centroids first; the merged
/// slice replaces both inputs and its centroid is used for later folds.
std::vector<double> merge_group(const contact::HumanContact& c, std::span<const Vec3> points,
                                const std::vector<int>& labels, std::vector<FoldStep>* trace = nullptr);

/// Merges each mapping group and labels each point by the group with the
/// largest merged value (lowest group on ties).
contact::RobotContact align_contact(const contact::HumanContact& c, std::span<const Vec3> points,
                                    const HumanRobotMapping& mapping);

}  // namespace dexsynth::alignment
