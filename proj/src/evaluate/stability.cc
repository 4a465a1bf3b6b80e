#include "dexsynth/evaluate/stability.h"

#include <cmath>
#include <numbers>

#include "dexsynth/common/error.h"
#include "dexsynth/evaluate/linear_feasibility.h"
#include "dexsynth/kinematics/forward_kinematics.h"
#include "dexsynth/kinematics/hand_cloud.h"

namespace dexsynth::evaluate {

void validate(const StabilityParams& p) {
  if (!(p.mu > 0)) throw ValidationError("mu must be > 0");
  if (!(p.f_max > 0)) throw ValidationError("f_max must be > 0");
  if (!(p.force >= 0)) throw ValidationError("force must be >= 0");
  if (!(p.tol > 0)) throw ValidationError("contact tol must be > 0");
  if (!(p.max_pen >= 0)) throw ValidationError("max_pen must be >= 0");
  if (p.cone_edges < 3) throw ValidationError("cone_edges must be >= 3");
  if (!(p.hand_density > 0)) throw ValidationError("hand_density must be > 0");
}

std::vector<Vec3> cone_edges(const Vec3& normal, double mu, int count) {
  // Tangent basis from the coordinate axis least aligned with the normal.
  int axis;
  normal.cwiseAbs().minCoeff(&axis);
  const Vec3 t1 = normal.cross(Vec3::Unit(axis)).normalized();
  const Vec3 t2 = normal.cross(t1);
  std::vector<Vec3> edges(count);
  for (int e = 0; e < count; ++e) {
    const double theta = 2.0 * std::numbers::pi * e / count;
    edges[e] = normal + mu * (std::cos(theta) * t1 + std::sin(theta) * t2);
  }
  return edges;
}

bool resists_wrench(const ContactPointSet& contacts, const Vec3& center, double mu, const Wrench& applied,
                    double f_max, int n_edges) {
  if (!(mu > 0) || !(f_max > 0)) throw Error("resists_wrench: mu and f_max must be > 0");
  if (contacts.empty()) return false;
  const int nc = static_cast<int>(contacts.size());
  double lever = 1e-3;
  for (const auto& c : contacts) lever = std::max(lever, (c.position - center).norm());
  // Unknowns: lambda_{i,e} >= 0, contact force f_i = sum_e lambda_{i,e} (n_i + mu t_e),
  // so the normal component of f_i is sum_e lambda_{i,e}.
  Eigen::MatrixXd a_eq = Eigen::MatrixXd::Zero(6, nc * n_edges);
  Eigen::MatrixXd a_ub = Eigen::MatrixXd::Zero(nc, nc * n_edges);
  for (int i = 0; i < nc; ++i) {
    const auto edges = cone_edges(contacts[i].normal, mu, n_edges);
    const Vec3 arm = (contacts[i].position - center) / lever;
    for (int e = 0; e < n_edges; ++e) {
      const int col = i * n_edges + e;
      a_eq.block<3, 1>(0, col) = edges[e];
      a_eq.block<3, 1>(3, col) = arm.cross(edges[e]);
      a_ub(i, col) = 1.0;
    }
  }
  Eigen::VectorXd b_eq(6);
  b_eq.head<3>() = -applied.head<3>();
  b_eq.tail<3>() = -applied.tail<3>() / lever;
  const Eigen::VectorXd b_ub = Eigen::VectorXd::Constant(nc, f_max);
  return find_feasible_point(a_eq, b_eq, a_ub, b_ub).feasible;
}

StabilityReport success_test(const ContactPointSet& contacts, double max_penetration, const Vec3& center,
                             const StabilityParams& params) {
  validate(params);
  StabilityReport report;
  report.max_penetration = max_penetration;
  report.contact_count = static_cast<int>(contacts.size());
  report.penetration_ok = max_penetration <= params.max_pen;
  if (!report.penetration_ok || contacts.empty()) return report;
  bool all = true;
  for (int d = 0; d < 6; ++d) {
    Wrench w = Wrench::Zero();
    w[d / 2] = d % 2 == 0 ? params.force : -params.force;
    report.directions[d] = resists_wrench(contacts, center, params.mu, w, params.f_max, params.cone_edges);
    all = all && report.directions[d];
  }
  report.success = all;
  return report;
}

StabilityReport success_test(const kinematics::HandModel& model, const kinematics::HandPose& pose,
                             const geometry::ObjectModel& object, const StabilityParams& params) {
  validate(params);
  kinematics::HandPose tested = pose;
  if (params.preclose != 0.0) {
    tested.q.array() += params.preclose;
    tested = kinematics::clamp_to_limits(model, tested);
  }
  const auto hand = kinematics::hand_surface_points(model, tested, params.hand_density, params.seed);
  const ContactPointSet contacts = extract_contacts(hand, object.sdf, params.tol, params.merge_radius);
  return success_test(contacts, max_penetration(hand, object.sdf), object.centroid, params);
}

}  // namespace dexsynth::evaluate
