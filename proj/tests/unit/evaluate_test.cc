#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "dexsynth/common/error.h"
#include "dexsynth/common/rng.h"
#include "dexsynth/evaluate/contacts.h"
#include "dexsynth/evaluate/diversity.h"
#include "dexsynth/evaluate/linear_feasibility.h"
#include "dexsynth/evaluate/stability.h"
#include "dexsynth/geometry/primitives.h"
#include "dexsynth/kinematics/forward_kinematics.h"
#include "dexsynth/kinematics/hand_cloud.h"
#include "polytope_oracle.h"
#include "test_support.h"
#include "toy_fixture.h"

namespace dexsynth::evaluate {
namespace {

using kinematics::HandPose;

TEST(LinearFeasibility, SmallSystems) {
  Eigen::MatrixXd aeq(1, 2), aub(1, 2);
  aeq << 1, 1;
  aub << 1, 0;
  Eigen::VectorXd beq(1), bub(1);
  beq << 1;
  bub << 0.5;
  auto r = find_feasible_point(aeq, beq, aub, bub);
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.x.sum(), 1.0, 1e-9);
  EXPECT_LE(r.x[0], 0.5 + 1e-9);
  EXPECT_GE(r.x.minCoeff(), -1e-12);

  beq << -1;  // x >= 0 cannot sum to -1
  EXPECT_FALSE(find_feasible_point(aeq, beq, aub, bub).feasible);

  // Negative right-hand side on an inequality: x0 - x1 <= -2, x0 + x1 = 3.
  aub << 1, -1;
  bub << -2;
  beq << 3;
  r = find_feasible_point(aeq, beq, aub, bub);
  ASSERT_TRUE(r.feasible);
  EXPECT_LE(r.x[0] - r.x[1], -2 + 1e-9);

  EXPECT_TRUE(find_feasible_point(Eigen::MatrixXd(0, 2), Eigen::VectorXd(0), aub, Eigen::VectorXd::Constant(1, 1.0))
                  .feasible);
}

TEST(LinearFeasibility, DegenerateSystemTerminates) {
  // Many redundant constraints through the same vertex stress the pivot rule.
  const int n = 6;
  Eigen::MatrixXd aub(12, n);
  Eigen::VectorXd bub = Eigen::VectorXd::Zero(12);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < n; ++j) aub(i, j) = ((i * 7 + j * 3) % 5) - 2.0;
  }
  Eigen::MatrixXd aeq = Eigen::MatrixXd::Ones(1, n);
  Eigen::VectorXd beq = Eigen::VectorXd::Zero(1);
  const auto r = find_feasible_point(aeq, beq, aub, bub);
  EXPECT_TRUE(r.feasible);
}

TEST(ConeEdges, UnitNormalComponentAndSpread) {
  const Vec3 n = Vec3(0.3, -0.4, 0.5).normalized();
  const auto e = cone_edges(n, 0.7, 8);
  for (const Vec3& d : e) {
    EXPECT_NEAR(d.dot(n), 1.0, 1e-12);
    EXPECT_NEAR((d - n).norm(), 0.7, 1e-12);
  }
  EXPECT_NEAR((e[0] - n + (e[4] - n)).norm(), 0.0, 1e-12);
}

TEST(ResistsWrench, TrivialCases) {
  const auto pair = testing::antipodal_pair(0.05);
  Wrench squeeze = Wrench::Zero();
  squeeze[0] = 1.0;
  EXPECT_TRUE(resists_wrench(pair, Vec3::Zero(), 0.5, squeeze, 10.0));
  ContactPointSet single = {pair[0]};
  Wrench pull = Wrench::Zero();
  pull[1] = 1.0;
  EXPECT_FALSE(resists_wrench(single, Vec3::Zero(), 0.5, pull, 10.0));
  EXPECT_FALSE(resists_wrench({}, Vec3::Zero(), 0.5, pull, 10.0));
  EXPECT_THROW(resists_wrench(pair, Vec3::Zero(), 0.0, pull, 10.0), Error);
}

TEST(ResistsWrench, AgreesWithPolytopeOracleAndMonotoneInMu) {
  const double r = 0.05, f_max = 10.0;
  const auto pair = testing::antipodal_pair(r);
  const std::vector<double> mus = {0.2, 0.35, 0.5, 0.75, 1.0};
  int compared = 0, ambiguous = 0;
  for (double fx : {-12.0, -6.0, -1.0, 0.0, 2.5, 9.0}) {
    for (double fy : {-8.0, -3.0, 0.0, 1.5, 4.0}) {
      for (double fz : {-5.0, 0.0, 2.0}) {
        for (double ty : {0.0, 0.1}) {
          for (double tx : {0.0, 0.05}) {
            Wrench w;
            w << fx, fy, fz, tx, ty, 0.0;
            bool prev = false;
            for (double mu : mus) {
              const bool got = resists_wrench(pair, Vec3::Zero(), mu, w, f_max);
              EXPECT_TRUE(got || !prev) << "not monotone at mu " << mu;
              prev = got;
              const auto expected = testing::oracle_resists(r, mu, f_max, 8, w);
              if (!expected) {
                ++ambiguous;
                continue;
              }
              ++compared;
              EXPECT_EQ(got, *expected) << w.transpose() << " mu " << mu;
            }
          }
        }
      }
    }
  }
  EXPECT_GT(compared, 10 * ambiguous);
}

TEST(ResistsWrench, PositiveHomogeneity) {
  const auto pair = testing::antipodal_pair(0.04);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    Wrench w;
    for (int k = 0; k < 6; ++k) w[k] = rng.uniform(-3, 3) * (k < 3 ? 1.0 : 0.02);
    w[3] = 0;
    const bool base = resists_wrench(pair, Vec3::Zero(), 0.6, w, 5.0);
    EXPECT_EQ(base, resists_wrench(pair, Vec3::Zero(), 0.6, 2.5 * w, 12.5));
  }
}

TEST(ExtractContacts, SphereNormalAndEmpty) {
  const geometry::SdfQuery sphere(geometry::make_icosphere(0.05, 5));
  kinematics::LabeledHandCloud hand;
  hand.points = {Vec3(0.0505, 0, 0), Vec3(0.2, 0, 0)};
  hand.part_of = {1, 1};
  hand.link_of = {0, 0};
  hand.body_points = hand.points;
  const auto c = extract_contacts(hand, sphere, 0.003);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NEAR((c[0].normal - Vec3(-1, 0, 0)).norm(), 0.0, 1e-3);
  EXPECT_EQ(c[0].depth, 0.0);
  hand.points = {Vec3(0.2, 0, 0)};
  hand.part_of = {1};
  hand.link_of = {0};
  EXPECT_TRUE(extract_contacts(hand, sphere, 0.003).empty());
}

TEST(ExtractContacts, ClusterCountMatchesQuadraticScan) {
  const geometry::SdfQuery sphere(geometry::make_icosphere(0.05, 4));
  Rng rng(4);
  kinematics::LabeledHandCloud hand;
  for (int i = 0; i < 600; ++i) {
    const Vec3 dir = (Vec3(1, 0, 0) + 0.15 * rng.unit_vector()).normalized();
    hand.points.push_back(dir * (0.05 + rng.uniform(-0.004, 0.004)));
    hand.part_of.push_back(1 + static_cast<int>(rng.index(3)));
    hand.link_of.push_back(0);
  }
  hand.body_points = hand.points;
  const double tol = 0.003, radius = 0.002;
  const auto contacts = extract_contacts(hand, sphere, tol, radius);
  // Leader clustering replayed by an O(n^2) scan.
  std::vector<int> idx;
  for (std::size_t k = 0; k < hand.points.size(); ++k) {
    if (std::abs(sphere.signed_distance(hand.points[k])) <= tol) idx.push_back(static_cast<int>(k));
  }
  std::vector<bool> claimed(idx.size(), false);
  int clusters = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (claimed[i]) continue;
    ++clusters;
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (!claimed[j] && hand.part_of[idx[j]] == hand.part_of[idx[i]] &&
          (hand.points[idx[j]] - hand.points[idx[i]]).norm() <= radius) {
        claimed[j] = true;
      }
    }
  }
  EXPECT_EQ(static_cast<int>(contacts.size()), clusters);
  for (const auto& c : contacts) {
    EXPECT_NEAR(c.normal.norm(), 1.0, 1e-9);
    EXPECT_GE(c.depth, 0.0);
  }
}

TEST(MaxPenetration, Values) {
  const geometry::SdfQuery cube(geometry::make_box(Vec3(0.1, 0.1, 0.1)));
  kinematics::LabeledHandCloud hand;
  hand.points = {Vec3(0.2, 0, 0)};
  EXPECT_EQ(max_penetration(hand, cube), 0.0);
  hand.points = {Vec3(0.2, 0, 0), Vec3(0.046, 0, 0), Vec3(0.049, 0, 0)};
  EXPECT_NEAR(max_penetration(hand, cube), 0.004, 1e-12);
}

// Two 1 cm balls (parts 1 and 2) pinching a 5 cm sphere along x.
kinematics::HandModel pinch_hand() {
  using namespace kinematics;
  Link a{"a", {Geometry{Transform(Eigen::Translation3d(0.06, 0, 0)), SphereShape{0.01}}}, 0, -1};
  Link b{"b", {Geometry{Transform(Eigen::Translation3d(-0.06, 0, 0)), SphereShape{0.01}}}, 0, -1};
  Joint fixed;
  fixed.name = "ab";
  fixed.parent = 0;
  fixed.child = 1;
  PartLabels labels;
  labels.part_count = 2;
  labels.link_parts = {{"a", 1}, {"b", 2}};
  return HandModel("pinch", {a, b}, {fixed}, labels);
}

TEST(SuccessTest, AntipodalPinchPassesSingleContactFails) {
  const auto model = pinch_hand();
  const auto sphere = geometry::make_object_model(geometry::make_icosphere(0.05, 5), 2048, 1);
  HandPose pose;
  pose.q.resize(0);
  StabilityParams params;
  params.mu = 1.0;
  const StabilityReport r = success_test(model, pose, sphere, params);
  EXPECT_TRUE(r.success);
  EXPECT_GT(r.contact_count, 1);
  for (bool d : r.directions) EXPECT_TRUE(d);

  ContactPointSet single = {testing::antipodal_pair(0.05)[0]};
  const StabilityReport s = success_test(single, 0.0, Vec3::Zero(), params);
  EXPECT_FALSE(s.success);

  const StabilityReport empty = success_test(ContactPointSet{}, 0.0, Vec3::Zero(), params);
  EXPECT_FALSE(empty.success);
  for (bool d : empty.directions) EXPECT_FALSE(d);
}

TEST(SuccessTest, PenetrationGateSkipsDirections) {
  StabilityParams params;
  const auto pair = testing::antipodal_pair(0.05);
  const StabilityReport r = success_test(pair, 0.03, Vec3::Zero(), params);
  EXPECT_FALSE(r.penetration_ok);
  EXPECT_FALSE(r.success);
  for (bool d : r.directions) EXPECT_FALSE(d);
}

TEST(SuccessTest, RigidTransformInvariance) {
  const auto model = pinch_hand();
  const auto mesh = geometry::make_icosphere(0.05, 4);
  const auto sphere = geometry::make_object_model(mesh, 1024, 1);
  StabilityParams params;
  params.mu = 0.8;
  HandPose pose;
  pose.q.resize(0);
  pose.rotation = kinematics::exp_map(Vec3(0, 0, 0.3));
  const StabilityReport a = success_test(model, pose, sphere, params);

  const Transform t = Eigen::Translation3d(0.3, -0.1, 0.2) * kinematics::exp_map(Vec3(0, 0, 0.5));
  auto moved = mesh;
  geometry::transform_in_place(moved, t);
  const auto sphere2 = geometry::make_object_model(moved, 1024, 1);
  HandPose pose2 = pose;
  pose2.translation = t * pose.translation;
  pose2.rotation = Eigen::Quaterniond(t.linear()) * pose.rotation;
  const StabilityReport b = success_test(model, pose2, sphere2, params);
  EXPECT_EQ(a.success, b.success);
  EXPECT_EQ(a.contact_count, b.contact_count);
}

HandPose grasp(const Vec3& rv, const Vec3& t, std::vector<double> q) {
  HandPose p;
  p.rotation = kinematics::exp_map(rv);
  p.translation = t;
  p.q = Eigen::Map<Eigen::VectorXd>(q.data(), static_cast<Eigen::Index>(q.size()));
  return p;
}

TEST(Diversity, HandComputedFixtures) {
  const HandPose a = grasp(Vec3::Zero(), Vec3::Zero(), {0.1, 0.2, 0.3});
  EXPECT_EQ(diversity({a, a, a}).angular, 0.0);
  EXPECT_EQ(diversity({a, a}).translation, 0.0);

  HandPose b = a;
  b.q[1] += 0.2;
  EXPECT_NEAR(diversity({a, b}).angular, 0.1 / 6.0, 1e-12);

  const HandPose c = grasp(Vec3(0, 0, 0.4), Vec3(0.02, 0, 0), {0.1, 0.2, 0.3});
  const DiversityResult d = diversity({a, c});
  EXPECT_NEAR(d.angular, 0.2 / 6.0, 1e-12);
  EXPECT_NEAR(d.translation, 0.01 / 3.0, 1e-12);

  EXPECT_THROW(diversity({a}), Error);
}

// Same algorithm in long double with an independent quaternion log.
using Vec4l = Eigen::Matrix<long double, 4, 1>;
DiversityResult diversity_oracle(const std::vector<HandPose>& poses) {
  Eigen::Matrix<long double, 4, 4> s = Eigen::Matrix<long double, 4, 4>::Zero();
  std::vector<Vec4l> qs;  // (w, x, y, z)
  for (const auto& p : poses) {
    Vec4l q(p.rotation.w(), p.rotation.x(), p.rotation.y(), p.rotation.z());
    q /= q.norm();
    qs.push_back(q);
    s += q * q.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<long double, 4, 4>> solver(s);
  const Vec4l ref = solver.eigenvectors().col(3);
  Vec4l mean = Vec4l::Zero();
  for (const auto& q : qs) mean += q.dot(ref) < 0 ? Vec4l(-q) : q;
  mean /= mean.norm();
  const std::size_t n = poses.size();
  const std::size_t dims = 3 + poses[0].q.size();
  std::vector<std::vector<long double>> cols(dims), trans(3);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec4l& q = qs[i];
    // conj(mean) * q
    const long double w = mean[0] * q[0] + mean[1] * q[1] + mean[2] * q[2] + mean[3] * q[3];
    const long double x = mean[0] * q[1] - mean[1] * q[0] - mean[2] * q[3] + mean[3] * q[2];
    const long double y = mean[0] * q[2] + mean[1] * q[3] - mean[2] * q[0] - mean[3] * q[1];
    const long double z = mean[0] * q[3] - mean[1] * q[2] + mean[2] * q[1] - mean[3] * q[0];
    const long double sign = w < 0 ? -1 : 1;
    const long double vn = std::sqrt(x * x + y * y + z * z);
    const long double k = vn < 1e-18L ? 2.0L * sign : 2.0L * std::atan2(vn, sign * w) / vn * sign;
    cols[0].push_back(k * x);
    cols[1].push_back(k * y);
    cols[2].push_back(k * z);
    for (std::size_t j = 0; j + 3 < dims; ++j) cols[3 + j].push_back(poses[i].q[j]);
    for (int a = 0; a < 3; ++a) trans[a].push_back(poses[i].translation[a]);
  }
  auto std_dev = [](const std::vector<long double>& v) {
    long double m = 0, ss = 0;
    for (long double x : v) m += x;
    m /= v.size();
    for (long double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / v.size());
  };
  long double ang = 0, tr = 0;
  for (const auto& c : cols) ang += std_dev(c);
  for (const auto& c : trans) tr += std_dev(c);
  return {static_cast<double>(ang / dims), static_cast<double>(tr / 3)};
}

TEST(Diversity, ExtendedPrecisionOracleAndPermutation) {
  Rng rng(6);
  std::mt19937 shuffler(1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<HandPose> poses;
    const Vec3 axis = rng.unit_vector();
    for (int i = 0; i < 12; ++i) {
      // Spread of up to ~1 rad around a common orientation.
      poses.push_back(grasp(axis * 1.2 + 0.5 * rng.unit_vector() * rng.uniform(),
                            Vec3(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)),
                            {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}));
    }
    const DiversityResult got = diversity(poses);
    const DiversityResult want = diversity_oracle(poses);
    EXPECT_NEAR(got.angular, want.angular, 1e-12);
    EXPECT_NEAR(got.translation, want.translation, 1e-12);
    for (int s = 0; s < 10; ++s) {
      std::shuffle(poses.begin(), poses.end(), shuffler);
      const DiversityResult p = diversity(poses);
      EXPECT_NEAR(p.angular, got.angular, 1e-12);
      EXPECT_NEAR(p.translation, got.translation, 1e-12);
    }
  }
}

TEST(Diversity, MeanRotationHemisphereInvariant) {
  const Eigen::Quaterniond a(kinematics::exp_map(Vec3(0, 0, 0.2)));
  Eigen::Quaterniond b(kinematics::exp_map(Vec3(0, 0, 0.6)));
  const Eigen::Quaterniond m1 = mean_rotation({a, b});
  b.coeffs() = -b.coeffs();
  const Eigen::Quaterniond m2 = mean_rotation({a, b});
  EXPECT_NEAR(m1.angularDistance(m2), 0.0, 1e-12);
  EXPECT_NEAR(m1.angularDistance(Eigen::Quaterniond(kinematics::exp_map(Vec3(0, 0, 0.4)))), 0.0, 1e-12);
}

}  // namespace
}  // namespace dexsynth::evaluate
