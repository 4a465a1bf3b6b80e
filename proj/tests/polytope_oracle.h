#pragma once

// Brute-force oracle for two antipodal contacts on the x axis:
//   contact 1 at (+r, 0, 0), inward normal -x; contact 2 at (-r, 0, 0), normal +x.
// Force and torque balance about the origin pin down both tangential forces
// and tie the normal magnitudes by b - a = -w_x, leaving one free scalar a
// (normal force of contact 1). The oracle scans a on a grid and, for each
// value, tests both tangential forces against the actual linearized cones.
// The slack is Lipschitz in a, so the scan certifies feasible (slack > 0 at a
// grid point) or infeasible (slack < -spacing * L everywhere); anything in
// between is reported as ambiguous and not compared.

#include <algorithm>
#include <cmath>
#include <optional>

#include "dexsynth/evaluate/stability.h"

namespace dexsynth::testing {

inline evaluate::ContactPointSet antipodal_pair(double r) {
  evaluate::ContactPointSet c(2);
  c[0].position = Vec3(r, 0, 0);
  c[0].normal = Vec3(-1, 0, 0);
  c[0].part = 1;
  c[1].position = Vec3(-r, 0, 0);
  c[1].normal = Vec3(1, 0, 0);
  c[1].part = 2;
  return c;
}

/// Smallest s >= 0 with t in s * polygon, where the polygon is the tangential
/// cross-section of the unit-normal cone (vertices edge - n).
inline double cone_gauge(const Vec3& normal, double mu, int edges, const Vec3& t) {
  const auto e = evaluate::cone_edges(normal, mu, edges);
  double gauge = 0.0;
  for (int k = 0; k < edges; ++k) {
    const Vec3 a = e[k] - normal, b = e[(k + 1) % edges] - normal;
    // Outward edge normal in the tangent plane and the edge's support distance.
    Vec3 out = (b - a).cross(normal);
    if (out.dot(a) < 0) out = -out;
    out.normalize();
    gauge = std::max(gauge, t.dot(out) / a.dot(out));
  }
  return gauge;
}

/// nullopt when the grid cannot certify the answer.
inline std::optional<bool> oracle_resists(double r, double mu, double f_max, int edges, const evaluate::Wrench& w,
                                          int grid = 4000) {
  const Vec3 force = w.head<3>(), torque = w.tail<3>();
  if (std::abs(torque.x()) > 1e-12) return false;  // point contacts on the x axis have no x moment arm
  // r e_x x (f1 - f2) = -torque fixes the tangential difference.
  const Vec3 v(0, -torque.z() / r, torque.y() / r);
  const Vec3 wt(0, force.y(), force.z());
  const Vec3 t1 = (-wt + v) / 2, t2 = (-wt - v) / 2;
  const double g1 = cone_gauge(Vec3(-1, 0, 0), mu, edges, t1);
  const double g2 = cone_gauge(Vec3(1, 0, 0), mu, edges, t2);
  const double step = f_max / grid;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    const double a = i * step;
    const double b = a - force.x();
    const double slack = std::min({a, f_max - a, b, f_max - b, a - g1, b - g2});
    best = std::max(best, slack);
  }
  if (best >= 1e-7) return true;
  if (best < -2 * step) return false;
  return std::nullopt;
}

}  // namespace dexsynth::testing
