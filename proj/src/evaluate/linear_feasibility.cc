#include "dexsynth/evaluate/linear_feasibility.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dexsynth/common/error.h"

namespace dexsynth::evaluate {

FeasibilityResult find_feasible_point(const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq,
                                      const Eigen::MatrixXd& a_ub, const Eigen::VectorXd& b_ub, double tolerance) {
  const Eigen::Index n = std::max(a_eq.cols(), a_ub.cols());
  if ((a_eq.rows() > 0 && a_eq.cols() != n) || (a_ub.rows() > 0 && a_ub.cols() != n) || a_eq.rows() != b_eq.size() ||
      a_ub.rows() != b_ub.size()) {
    throw Error("find_feasible_point: inconsistent dimensions");
  }
  const Eigen::Index m_eq = a_eq.rows(), m_ub = a_ub.rows(), m = m_eq + m_ub;
  FeasibilityResult result;
  result.x = Eigen::VectorXd::Zero(n);
  if (m == 0) {
    result.feasible = true;
    return result;
  }

  // Columns: x (n), slacks (m_ub), artificials (m). Last column is the rhs.
  const Eigen::Index n_slack = m_ub, cols = n + n_slack + m;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, cols + 1);
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const bool eq = r < m_eq;
    Eigen::VectorXd row = eq ? Eigen::VectorXd(a_eq.row(r)) : Eigen::VectorXd(a_ub.row(r - m_eq));
    double rhs = eq ? b_eq[r] : b_ub[r - m_eq];
    double slack = eq ? 0.0 : 1.0;
    if (rhs < 0.0) {
      row = -row;
      rhs = -rhs;
      slack = -slack;
    }
    t.row(r).head(n) = row.transpose();
    if (!eq) t(r, n + (r - m_eq)) = slack;
    t(r, cols) = rhs;
    if (slack > 0.0) {
      basis[r] = n + (r - m_eq);
    } else {
      t(r, n + n_slack + r) = 1.0;
      basis[r] = n + n_slack + r;
    }
  }
  // Phase-1 objective: minimize the sum of basic artificials. Objective row
  // holds reduced costs, with -(objective value) in the rhs column.
  for (Eigen::Index r = 0; r < m; ++r) {
    if (basis[r] >= n + n_slack) t.row(m) -= t.row(r);
  }
  for (Eigen::Index r = 0; r < m; ++r) t(m, basis[r]) = 0.0;

  const double scale = std::max(1.0, t.col(cols).head(m).cwiseAbs().maxCoeff());
  const double eps = tolerance * scale;
  const int max_pivots = 50 * static_cast<int>(m + cols);
  while (result.pivots < max_pivots) {
    Eigen::Index enter = -1;
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (t(m, c) < -tolerance) {
        enter = c;
        break;
      }
    }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < m; ++r) {
      if (t(r, enter) <= tolerance) continue;
      const double ratio = t(r, cols) / t(r, enter);
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        leave = r;
      } else if (ratio <= best_ratio + 1e-12 && basis[r] < basis[leave]) {
        leave = r;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase 1; stop defensively
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index r = 0; r <= m; ++r) {
      if (r != leave && t(r, enter) != 0.0) t.row(r) -= t(r, enter) * t.row(leave);
    }
    basis[leave] = enter;
    ++result.pivots;
  }
  const double infeasibility = -t(m, cols);
  result.feasible = infeasibility <= eps;
  if (result.feasible) {
    for (Eigen::Index r = 0; r < m; ++r) {
      if (basis[r] < n) result.x[basis[r]] = std::max(0.0, t(r, cols));
    }
  }
  return result;
}

}  // namespace dexsynth::evaluate
