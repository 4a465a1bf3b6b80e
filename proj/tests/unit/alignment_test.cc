#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "dexsynth/alignment/mapping.h"
#include "dexsynth/alignment/merge.h"
#include "dexsynth/common/error.h"
#include "dexsynth/common/rng.h"
#include "dexsynth/contact/provider.h"
#include "oracles.h"
#include "test_support.h"

namespace dexsynth::alignment {
namespace {

using contact::HumanContact;

using testing::random_contact;

TEST(Centroids, ExtendedPrecisionOracle) {
  Rng rng(1);
  std::vector<Vec3> pts(5000);
  std::vector<double> w(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts[i] = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)) * 0.1;
    w[i] = rng.uniform();
  }
  long double sum[3] = {0, 0, 0}, wsum[3] = {0, 0, 0}, mass = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      sum[k] += pts[i][k];
      wsum[k] += static_cast<long double>(w[i]) * pts[i][k];
    }
    mass += w[i];
  }
  const Vec3 c = object_centroid(pts);
  const Vec3 m = part_centroid(pts, w);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(c[k], static_cast<double>(sum[k] / pts.size()), 1e-12);
    EXPECT_NEAR(m[k], static_cast<double>(wsum[k] / mass), 1e-12);
  }
  EXPECT_EQ(object_centroid(std::vector<Vec3>{Vec3(1, 0, 0), Vec3(-1, 0, 0)}), Vec3::Zero());
  const std::vector<Vec3> two = {Vec3(0, 0, 0), Vec3(2, 4, 6)};
  EXPECT_EQ(part_centroid(two, std::vector<double>{1, 1}), Vec3(1, 2, 3));
  EXPECT_EQ(part_centroid(two, std::vector<double>{0, 0.3}), two[1]);
  try {
    part_centroid(two, std::vector<double>{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "empty part");
  }
}

TEST(Slices, PartitionIdentity) {
  const auto obj = testing::fixture_object("cube_60.obj", 512);
  Rng rng(2);
  const HumanContact c = random_contact(obj.cloud, {1, 4, 7, 13}, rng);
  std::vector<double> total(c.size(), 0.0);
  for (int l = 1; l <= 16; ++l) {
    const auto s = part_contact_slice(c, l);
    for (std::size_t k = 0; k < c.size(); ++k) total[k] += s[k];
  }
  for (std::size_t k = 0; k < c.size(); ++k) EXPECT_EQ(total[k], c.contact[k]);
}

TEST(ProjectionDirection, ClosedFormAndDegenerate) {
  EXPECT_NEAR((projection_direction(Vec3::Zero(), Vec3(2, 0, 0), Vec3(0, 3, 0)) - Vec3(1, 1, 0) / std::sqrt(2.0)).norm(),
              0.0, 1e-15);
  EXPECT_NEAR((projection_direction(Vec3::Zero(), Vec3(0, 0, 2), Vec3(0, 0, 5)) - Vec3(0, 0, 1)).norm(), 0.0, 1e-15);
  EXPECT_THROW(projection_direction(Vec3::Zero(), Vec3(1, 0, 0), Vec3(-1, 0, 0)), DegenerateBisector);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Vec3 mo = rng.unit_vector(), a = rng.unit_vector() * 2, b = rng.unit_vector() * 3;
    const Vec3 v = projection_direction(mo, a, b);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    const Vec3 n = (a - mo).cross(b - mo).normalized();
    EXPECT_NEAR(v.dot(n), 0.0, 1e-9);
  }
}

TEST(Remap, FixedPointAndLine) {
  const std::vector<Vec3> line = {Vec3(1, 0, 0), Vec3(2, 0, 0)};
  // Mass on A, other centroid beyond B: the ray runs along +x and lands on A (nearest on the ray).
  // Moving the centroid off-axis tilts the ray toward B.
  const RemapResult stay = remap_part(line, std::vector<double>{0.5, 0}, Vec3::Zero(), Vec3(3, 0, 0));
  EXPECT_EQ(stay.target[0], 0);
  const std::vector<Vec3> pts = {Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0.2, 1, 0)};
  const RemapResult moved = remap_part(pts, std::vector<double>{0.5, 0, 0}, Vec3::Zero(), Vec3(0, 4, 0));
  EXPECT_EQ(moved.target[0], 1);
  EXPECT_EQ(moved.slice, (std::vector<double>{0, 0.5, 0}));
}

TEST(Remap, DegenerateKeepsMassAndEmptyHalfSpaceSkips) {
  const std::vector<Vec3> pts = {Vec3(1, 0, 0), Vec3(-1, 0, 0)};
  const RemapResult r = remap_part(pts, std::vector<double>{0.4, 0}, Vec3::Zero(), Vec3(-2, 0, 0));
  EXPECT_EQ(r.degenerate, 1);
  EXPECT_EQ(r.target[0], 0);
  EXPECT_EQ(r.slice[0], 0.4);
  EXPECT_EQ(nearest_to_ray(pts, Vec3(5, 0, 0), Vec3(1, 0, 0)), -1);
}

TEST(Remap, TargetsInForwardHalfSpaceAndMassConserved) {
  const auto obj = testing::fixture_object("sphere_r50.obj", 1024);
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const HumanContact c = random_contact(obj.cloud, {2}, rng);
    const auto slice = part_contact_slice(c, 2);
    const Vec3 other = obj.cloud.points[rng.index(obj.cloud.size())];
    const RemapResult r = remap_part(obj.cloud.points, slice, obj.centroid, other);
    double in = 0, out = 0;
    for (std::size_t k = 0; k < slice.size(); ++k) {
      in += slice[k];
      out += r.slice[k];
      if (r.target[k] >= 0 && r.direction[k].norm() > 0) {
        EXPECT_GT((obj.cloud.points[r.target[k]] - obj.centroid).dot(r.direction[k]), 0.0);
        EXPECT_NEAR(r.direction[k].norm(), 1.0, 1e-9);
      }
    }
    EXPECT_EQ(r.skipped, 0);
    EXPECT_NEAR(in, out, 1e-9);
  }
}

TEST(MergePair, UnionClampAndCommutativity) {
  const std::vector<double> a = {0.5, 0.4, 0.0, 0.9};
  const std::vector<double> b = {0.7, 0.0, 0.0, 0.05};
  const auto m = merge_pair(a, b);
  EXPECT_EQ(m, (std::vector<double>{1.0, 0.4, 0.0, 0.9 + 0.05}));
  EXPECT_EQ(m, merge_pair(b, a));
}

TEST(MergeGroup, SingleAndEmpty) {
  const auto obj = testing::fixture_object("cube_60.obj", 512);
  Rng rng(5);
  const HumanContact c = random_contact(obj.cloud, {5}, rng);
  EXPECT_EQ(merge_group(c, obj.cloud.points, {5}), part_contact_slice(c, 5));
  EXPECT_EQ(merge_group(c, obj.cloud.points, {5, 8}), part_contact_slice(c, 5));
  const auto none = merge_group(c, obj.cloud.points, {9, 10});
  EXPECT_TRUE(std::all_of(none.begin(), none.end(), [](double v) { return v == 0.0; }));
}

TEST(MergeGroup, ClosestCentroidsFoldFirst) {
  const auto obj = testing::fixture_object("sphere_r50.obj", 1024);
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const HumanContact c = random_contact(obj.cloud, {5, 8, 11}, rng);
    std::vector<int> present;
    std::vector<Vec3> centroids;
    for (int l : {5, 8, 11}) {
      const auto s = part_contact_slice(c, l);
      if (std::any_of(s.begin(), s.end(), [](double v) { return v > 0; })) {
        present.push_back(l);
        centroids.push_back(part_centroid(obj.cloud.points, s));
      }
    }
    if (present.size() < 3) continue;
    // Enumerate the three possible first folds and check the selected one.
    int expected_i = 0, expected_j = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const double d = (centroids[i] - centroids[j]).norm();
        if (d < best) {
          best = d;
          expected_i = i;
          expected_j = j;
        }
      }
    }
    std::vector<FoldStep> trace;
    const auto merged = merge_group(c, obj.cloud.points, {5, 8, 11}, &trace);
    ASSERT_GE(trace.size(), 1u);
    EXPECT_EQ(trace[0].first, expected_i);
    EXPECT_EQ(trace[0].second, expected_j);

    // Replay that fold order by hand.
    const Vec3 mo = object_centroid(obj.cloud.points);
    const auto si = part_contact_slice(c, present[expected_i]);
    const auto sj = part_contact_slice(c, present[expected_j]);
    const auto first = merge_pair(remap_part(obj.cloud.points, si, mo, centroids[expected_j]).slice,
                                  remap_part(obj.cloud.points, sj, mo, centroids[expected_i]).slice);
    const int rest = 3 - expected_i - expected_j;
    const auto sr = part_contact_slice(c, present[rest]);
    const Vec3 mf = part_centroid(obj.cloud.points, first);
    const Vec3 mr = centroids[rest];
    const bool merged_first = expected_i < rest;  // merged slice sits at the lower position
    const auto& a = merged_first ? first : sr;
    const auto& b = merged_first ? sr : first;
    const Vec3 ma = merged_first ? mf : mr, mb = merged_first ? mr : mf;
    const auto expected = merge_pair(remap_part(obj.cloud.points, a, mo, mb).slice,
                                     remap_part(obj.cloud.points, b, mo, ma).slice);
    EXPECT_EQ(merged, expected);
  }
}

TEST(AlignContact, IdentityMappingRoundTrip) {
  const auto obj = testing::fixture_object("sphere_r50.obj", 1024);
  const HumanContact c = contact::generate_heuristic(obj.cloud, {}, 11).contact;
  std::vector<int> used;
  for (std::uint8_t p : c.part) {
    if (p && std::find(used.begin(), used.end(), p) == used.end()) used.push_back(p);
  }
  std::sort(used.begin(), used.end());
  const auto rc = align_contact(c, obj.cloud.points, identity_mapping(used));
  for (std::size_t k = 0; k < c.size(); ++k) {
    EXPECT_EQ(rc.contact[k], c.contact[k]);
    if (c.part[k]) EXPECT_EQ(used[rc.part[k] - 1], c.part[k]);
  }
}

TEST(AlignContact, ZeroInputAndMassAccounting) {
  const auto obj = testing::fixture_object("cube_60.obj", 1024);
  HumanContact zero;
  zero.contact.assign(obj.cloud.size(), 0.0f);
  zero.part.assign(obj.cloud.size(), 0);
  const auto mapping = load_mapping(testing::data_dir() / "mappings" / "tri_finger.json");
  const auto rz = align_contact(zero, obj.cloud.points, mapping);
  EXPECT_EQ(rz.mass(), 0.0);
  EXPECT_EQ(rz.arity, 4);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const HumanContact c = contact::generate_heuristic(obj.cloud, {}, seed).contact;
    const auto rc = align_contact(c, obj.cloud.points, mapping);
    EXPECT_NO_THROW(contact::validate(rc));
    EXPECT_GT(rc.mass(), 0.0);
    EXPECT_LE(rc.mass(), c.mass() + 1e-6);
  }
}

TEST(Mapping, ShippedFilesValid) {
  const std::map<std::string, int> parts = {{"tri_finger", 4}, {"quad_finger", 5}, {"penta_finger", 6},
                                            {"barrett", 4},    {"robotiq3f", 4},   {"allegro", 5},
                                            {"shadow", 6}};
  for (const auto& [name, count] : parts) {
    const auto m = load_mapping(testing::data_dir() / "mappings" / (name + ".json"));
    EXPECT_EQ(m.part_count(), count) << name;
  }
}

TEST(Mapping, InvalidRejected) {
  EXPECT_THROW(parse_mapping(R"({"robot_name":"x","groups":[[1],[17]]})"), ValidationError);
  EXPECT_THROW(parse_mapping(R"({"robot_name":"x","groups":[[1,2],[2]]})"), ValidationError);
  EXPECT_THROW(parse_mapping(R"({"robot_name":"x","groups":[[1],[]]})"), ValidationError);
  EXPECT_THROW(parse_mapping(R"({"robot_name":"x","num_parts":3,"groups":[[1],[2]]})"), ValidationError);
  EXPECT_THROW(parse_mapping("{"), ParseError);
  const auto m = parse_mapping(R"({"robot_name":"x","groups":[[1],[2,3]]})");
  EXPECT_EQ(m.robot_part(3), 2);
  EXPECT_EQ(m.robot_part(9), 0);
}

}  // namespace
}  // namespace dexsynth::alignment
