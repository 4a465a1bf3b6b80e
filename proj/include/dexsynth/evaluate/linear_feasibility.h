#pragma once

#include <Eigen/Dense>

namespace dexsynth::evaluate {

struct FeasibilityResult {
  bool feasible = false;
  Eigen::VectorXd x;  // a feasible point when feasible
  int pivots = 0;
};

/// Decides whether some x >= 0 satisfies a_eq x = b_eq and a_ub x <= b_ub,
/// with a dense phase-1 simplex using Bland's rule (deterministic, no cycling).
/// Either block may have zero rows.
FeasibilityResult find_feasible_point(const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq,
                                      const Eigen::MatrixXd& a_ub, const Eigen::VectorXd& b_ub,
                                      double tolerance = 1e-9);

}  // namespace dexsynth::evaluate
