#include "dexsynth/alignment/merge.h"

#include <algorithm>
#include <limits>

namespace dexsynth::alignment {

Vec3 object_centroid(std::span<const Vec3> points) {
  if (points.empty()) throw Error("object_centroid: empty point cloud");
  Vec3 sum = Vec3::Zero();
  for (const Vec3& p : points) sum += p;
  return sum / static_cast<double>(points.size());
}

Vec3 part_centroid(std::span<const Vec3> points, std::span<const double> slice) {
  if (points.size() != slice.size()) throw Error("part_centroid: size mismatch");
  Vec3 sum = Vec3::Zero();
  double mass = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (slice[k] == 0.0) continue;
    sum += slice[k] * points[k];
    mass += slice[k];
  }
  if (!(mass > 0.0)) throw Error("empty part");
  return sum / mass;
}

std::vector<double> part_contact_slice(const contact::ContactMap& c, int label) {
  if (label < 1 || label > c.arity) throw Error("invalid part label " + std::to_string(label));
  std::vector<double> out(c.size(), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c.part[k] == label) out[k] = c.contact[k];
  }
  return out;
}

Vec3 projection_direction(const Vec3& mo, const Vec3& ox, const Vec3& m_other) {
  const Vec3 a = ox - mo;
  const Vec3 b = m_other - mo;
  if (a.norm() == 0.0 || b.norm() == 0.0) throw DegenerateBisector();
  const Vec3 sum = a.normalized() + b.normalized();
  const double n = sum.norm();
  if (n < 1e-9) throw DegenerateBisector();
  return sum / n;
}

int nearest_to_ray(std::span<const Vec3> points, const Vec3& mo, const Vec3& v) {
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Vec3 r = points[k] - mo;
    const double t = r.dot(v);
    if (!(t > 0.0)) continue;
    const double d2 = (r - t * v).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(k);
    }
  }
  return best;
}

RemapResult remap_part(std::span<const Vec3> points, std::span<const double> source, const Vec3& mo,
                       const Vec3& m_other) {
  if (points.size() != source.size()) throw Error("remap_part: size mismatch");
  RemapResult r;
  r.slice.assign(points.size(), 0.0);
  r.target.assign(points.size(), -1);
  r.direction.assign(points.size(), Vec3::Zero());
  for (std::size_t x = 0; x < points.size(); ++x) {
    if (!(source[x] > 0.0)) continue;
    int target;
    try {
      r.direction[x] = projection_direction(mo, points[x], m_other);
      target = nearest_to_ray(points, mo, r.direction[x]);
    } catch (const DegenerateBisector&) {
      ++r.degenerate;
      target = static_cast<int>(x);
    }
    if (target < 0) {
      ++r.skipped;
      continue;
    }
    r.target[x] = target;
    r.slice[target] += source[x];
  }
  return r;
}

std::vector<double> merge_pair(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("merge_pair: size mismatch");
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const bool pa = a[k] > 0.0, pb = b[k] > 0.0;
    double v = 0.0;
    if (pa && pb) {
      v = a[k] + b[k];
    } else if (pa) {
      v = a[k];
    } else if (pb) {
      v = b[k];
    }
    out[k] = std::min(v, 1.0);
  }
  return out;
}

namespace {

bool has_mass(const std::vector<double>& s) {
  return std::any_of(s.begin(), s.end(), [](double v) { return v > 0.0; });
}

}  // namespace

std::vector<double> merge_group(const contact::HumanContact& c, std::span<const Vec3> points,
                                const std::vector<int>& labels, std::vector<FoldStep>* trace) {
  if (labels.empty()) throw Error("merge_group: no labels");
  if (points.size() != c.size()) throw Error("merge_group: contact and object sizes differ");
  struct Item {
    std::vector<double> slice;
    Vec3 centroid;
  };
  std::vector<Item> items;
  for (int l : labels) {
    std::vector<double> s = part_contact_slice(c, l);
    if (!has_mass(s)) continue;
    const Vec3 m = part_centroid(points, s);
    items.push_back({std::move(s), m});
  }
  if (items.empty()) return std::vector<double>(points.size(), 0.0);
  const Vec3 mo = object_centroid(points);
  while (items.size() > 1) {
    std::size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        const double d = (items[i].centroid - items[j].centroid).squaredNorm();
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (trace) trace->push_back({static_cast<int>(bi), static_cast<int>(bj)});
    const RemapResult ri = remap_part(points, items[bi].slice, mo, items[bj].centroid);
    const RemapResult rj = remap_part(points, items[bj].slice, mo, items[bi].centroid);
    Item merged{merge_pair(ri.slice, rj.slice), Vec3::Zero()};
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(bj));
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(bi));
    if (has_mass(merged.slice)) {
      merged.centroid = part_centroid(points, merged.slice);
      items.insert(items.begin() + static_cast<std::ptrdiff_t>(bi), std::move(merged));
    }
  }
  if (items.empty()) return std::vector<double>(points.size(), 0.0);
  std::vector<double> out = std::move(items.front().slice);
  for (double& v : out) v = std::min(v, 1.0);
  return out;
}

contact::RobotContact align_contact(const contact::HumanContact& c, std::span<const Vec3> points,
                                    const HumanRobotMapping& mapping) {
  validate(mapping);
  contact::validate(c);
  contact::RobotContact out;
  out.arity = mapping.part_count();
  out.contact.assign(c.size(), 0.0f);
  out.part.assign(c.size(), 0);
  std::vector<double> best(c.size(), 0.0);
  for (int g = 0; g < mapping.part_count(); ++g) {
    const std::vector<double> merged = merge_group(c, points, mapping.groups[g]);
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (merged[k] > best[k]) {
        best[k] = merged[k];
        out.part[k] = static_cast<std::uint8_t>(g + 1);
      }
    }
  }
  for (std::size_t k = 0; k < c.size(); ++k) out.contact[k] = static_cast<float>(std::clamp(best[k], 0.0, 1.0));
  contact::validate(out);
  return out;
}

}  // namespace dexsynth::alignment
