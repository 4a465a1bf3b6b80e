#include <cstring>
#include <sstream>

#include <gtest/gtest.h>

#include "dexsynth/common/error.h"
#include "dexsynth/common/rng.h"
#include "dexsynth/contact/compute.h"
#include "dexsynth/contact/contact_io.h"
#include "dexsynth/contact/provider.h"
#include "dexsynth/kinematics/forward_kinematics.h"
#include "test_support.h"

namespace dexsynth::contact {
namespace {

std::vector<Vec3> random_points(Rng& rng, int n, double half) {
  std::vector<Vec3> out(n);
  for (Vec3& p : out) p = Vec3(rng.uniform(-half, half), rng.uniform(-half, half), rng.uniform(-half, half));
  return out;
}

ContactMap small_map() {
  ContactMap m;
  m.arity = 16;
  m.contact = {0.0f, 0.25f, 1.0f, 0.5f};
  m.part = {0, 3, 16, 1};
  return m;
}

TEST(ContactMap, Validation) {
  ContactMap m = small_map();
  EXPECT_NO_THROW(validate(m));
  m.contact[0] = 1.5f;
  EXPECT_THROW(validate(m), ValidationError);
  m = small_map();
  m.part[1] = 0;
  EXPECT_THROW(validate(m), ValidationError);
  m = small_map();
  m.part[1] = 17;
  EXPECT_THROW(validate(m), ValidationError);
}

TEST(ContactMap, RowsRoundTripAndTwoHotRejected) {
  const ContactMap m = small_map();
  const auto rows = part_rows(m);
  const ContactMap back = contact_from_rows(16, m.contact, rows);
  EXPECT_EQ(back.part, m.part);
  auto bad = rows;
  bad[2][1] = 1.0f;
  try {
    contact_from_rows(16, m.contact, bad);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("not one-hot"), std::string::npos);
  }
}

TEST(ContactMap, PartNames) {
  EXPECT_EQ(human_part_name(1), "palm");
  EXPECT_EQ(human_part_name(4), "thumb3");
  EXPECT_EQ(human_part_name(16), "pinky3");
  EXPECT_THROW(human_part_name(17), Error);
}

TEST(ComputeContactMap, MatchesAllPairsScan) {
  Rng rng(1);
  const auto object = random_points(rng, 400, 0.05);
  const auto hand = random_points(rng, 300, 0.06);
  const geometry::CapsuleParams params;
  const auto values = compute_contact_map(object, hand, params);
  for (std::size_t i = 0; i < object.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& h : hand) best = std::min(best, (h - object[i]).norm());
    EXPECT_NEAR(values[i], geometry::capsule_contact_value(best, params), 1e-12);
  }
}

TEST(ComputeContactMap, TrivialCasesAndRigidInvariance) {
  const std::vector<Vec3> object = {Vec3(0, 0, 0), Vec3(1, 0, 0)};
  EXPECT_EQ(compute_contact_map(object, std::vector<Vec3>{Vec3(0, 0, 0)})[0], 1.0);
  const auto far = compute_contact_map(object, std::vector<Vec3>{Vec3(0.5, 0.5, 0.5)});
  EXPECT_EQ(far[0], 0.0);
  EXPECT_EQ(far[1], 0.0);

  Rng rng(2);
  auto obj = random_points(rng, 200, 0.05);
  auto hand = random_points(rng, 200, 0.05);
  const auto before = compute_contact_map(obj, hand);
  const Transform t = Eigen::Translation3d(0.3, -0.2, 0.1) * kinematics::exp_map(Vec3(0.4, -1.0, 2.0));
  for (Vec3& p : obj) p = t * p;
  for (Vec3& p : hand) p = t * p;
  const auto after = compute_contact_map(obj, hand);
  for (std::size_t i = 0; i < before.size(); ++i) EXPECT_NEAR(before[i], after[i], 1e-9);
}

TEST(ComputePartMap, MatchesNearestNeighborScan) {
  const auto model = testing::fixture_hand("tri_finger");
  kinematics::HandPose pose;
  pose.q = (model.lower_limits() + model.upper_limits()) / 2;
  const auto hand = kinematics::hand_surface_points(model, pose, 20000, 1);
  Rng rng(3);
  const auto object = random_points(rng, 500, 0.08);
  const double range = 0.02;
  const auto parts = compute_part_map(object, hand, range);
  for (std::size_t i = 0; i < object.size(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < hand.size(); ++j) {
      if ((hand.points[j] - object[i]).squaredNorm() < (hand.points[best] - object[i]).squaredNorm()) best = j;
    }
    const int expected = (hand.points[best] - object[i]).norm() <= range ? hand.part_of[best] : 0;
    EXPECT_EQ(parts[i], expected);
  }
  const RobotContact rc = contact_from_hand(object, hand, model.part_count());
  EXPECT_NO_THROW(validate(rc));
  for (std::size_t i = 0; i < rc.size(); ++i) {
    if (rc.contact[i] > 0) EXPECT_GT(rc.part[i], 0);
  }
}

TEST(Heuristic, DeterministicValidAndOpposed) {
  for (const char* file : {"sphere_r50.obj", "cube_60.obj", "tetrahedron.ply"}) {
    const auto obj = testing::fixture_object(file, 1024);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const HeuristicResult r = generate_heuristic(obj.cloud, {}, seed);
      EXPECT_NO_THROW(validate(r.contact));
      EXPECT_GE(r.finger_count, 2);
      EXPECT_LE(r.finger_count, 4);
      for (std::uint8_t p : r.contact.part) {
        EXPECT_TRUE(p == kNoPart || p == kPalm || p == kThumb3 || p == kIndex3 || p == kMiddle3 || p == kRing3 ||
                    p == kPinky3);
      }
    }
  }
  const auto sphere = testing::fixture_object("sphere_r50.obj");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const HumanContact a = generate_contact(HeuristicGenerator{seed, {}}, sphere.cloud);
    const HumanContact b = generate_contact(HeuristicGenerator{seed, {}}, sphere.cloud);
    EXPECT_EQ(a.contact, b.contact);
    EXPECT_EQ(a.part, b.part);
    Vec3 thumb = Vec3::Zero(), fingers = Vec3::Zero();
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a.part[k] == kThumb3) thumb += a.contact[k] * sphere.cloud.points[k];
      if (a.part[k] >= kIndex1) fingers += a.contact[k] * sphere.cloud.points[k];
    }
    EXPECT_LT((thumb - sphere.centroid).dot(fingers - sphere.centroid), 0.0) << seed;
  }
}

TEST(ContactIo, RoundTrip) {
  const ContactMap m = small_map();
  std::stringstream ss;
  write_contact(ss, m, "abc");
  const LoadedContact back = read_contact(ss, 16, 4);
  EXPECT_EQ(back.map.contact, m.contact);
  EXPECT_EQ(back.map.part, m.part);
  EXPECT_EQ(back.map.arity, 16);
  EXPECT_EQ(back.object_hash, "abc");
}

TEST(ContactIo, ArityAndCountMismatch) {
  std::stringstream ss;
  write_contact(ss, small_map(), "");
  const std::string bytes = ss.str();
  std::istringstream a(bytes);
  try {
    read_contact(a, 4);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("part arity mismatch"), std::string::npos);
  }
  std::istringstream b(bytes);
  EXPECT_THROW(read_contact(b, 16, 5), ValidationError);
  std::istringstream c(bytes.substr(0, bytes.size() - 1));
  EXPECT_THROW(read_contact(c), ParseError);
  std::istringstream d(bytes + "x");
  EXPECT_THROW(read_contact(d), ParseError);
}

TEST(ContactIo, OutOfRangeValueRejected) {
  std::stringstream ss;
  write_contact(ss, small_map(), "");
  std::string bytes = ss.str();
  const float bad = 1.5f;
  const std::size_t payload = bytes.find('\n') + 1;
  std::memcpy(bytes.data() + payload, &bad, sizeof bad);
  std::istringstream in(bytes);
  EXPECT_THROW(read_contact(in), ValidationError);
}

TEST(ContactIo, FileLoaderChecksObject) {
  const auto obj = testing::fixture_object("sphere_r50.obj", 256);
  const HumanContact c = generate_heuristic(obj.cloud, {}, 4).contact;
  const auto dir = testing::scratch_dir("contact_io");
  save_contact(dir / "c.bin", c, "h1");
  EXPECT_EQ(generate_contact(FileLoader{dir / "c.bin", "h1"}, obj.cloud).contact, c.contact);
  EXPECT_THROW(generate_contact(FileLoader{dir / "c.bin", "h2"}, obj.cloud), ValidationError);
  const auto other = testing::fixture_object("sphere_r50.obj", 300);
  EXPECT_THROW(generate_contact(FileLoader{dir / "c.bin", std::nullopt}, other.cloud), ValidationError);
}

}  // namespace
}  // namespace dexsynth::contact
