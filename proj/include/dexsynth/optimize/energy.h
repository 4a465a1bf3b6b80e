#pragma once

#include <span>
#include <vector>

#include "dexsynth/contact/contact_map.h"
#include "dexsynth/geometry/object_model.h"
#include "dexsynth/kinematics/hand_cloud.h"

namespace dexsynth::optimize {

struct EnergyWeights {
  double w_contact = 1.0;
  double w_spf = 1.0;
  double w_erf = 300.0;  // contact term sums over ~10^2 active points; 10 lets the hand sink in
  double w_srf = 1.0;
  double spf_threshold = 0.02;  // m, membership radius of the pulled set
  double eta = 1e-4;
  double d_th = 0.005;  // m, self-collision hinge distance
};

void validate(const EnergyWeights& weights);

struct EnergyTerms {
  double contact = 0.0;
  double spf = 0.0;
  double erf = 0.0;
  double srf = 0.0;
};

double weighted_total(const EnergyTerms& terms, const EnergyWeights& weights);

// Closed-form term values on precomputed distances, shared by the hand-level
// functions below.

/// sum_{|d| <= threshold} sqrt|d| / (|S| + eta)
double spf_value(std::span<const double> distances, double threshold, double eta);
/// (1/parts) sum_b max_{k in b} max(0, -d_k); part ids 1..parts
double erf_value(std::span<const double> distances, std::span<const int> part_of, int parts);

/// Pairs of links excluded from self-collision: each geometric link and the
/// nearest ancestor that carries geometry (they touch at the joint by design).
std::vector<std::vector<bool>> adjacent_links(const kinematics::HandModel& model);

/// Hinge sum over point pairs on distinct parts, skipping adjacent links,
/// divided by the part count.
double srf_value(std::span<const Vec3> points, std::span<const int> part_of, std::span<const int> link_of,
                 const std::vector<std::vector<bool>>& adjacent, double d_th, int parts);

// Hand-level terms. `grad` (length 6 + dofs) is accumulated with the
// unweighted term gradient when non-null. Subgradients at kinks are zero.

double contact_loss(std::span<const Vec3> object, const contact::RobotContact& rc,
                    const kinematics::PosedHand& hand, Eigen::VectorXd* grad = nullptr);

/// `hand` must already be reposed to `posed`.
double spf_loss(const kinematics::LabeledHandCloud& hand, const kinematics::PosedHand& posed,
                const geometry::SdfQuery& sdf, const EnergyWeights& weights, Eigen::VectorXd* grad = nullptr);
double erf_loss(const kinematics::LabeledHandCloud& hand, const kinematics::PosedHand& posed,
                const geometry::SdfQuery& sdf, int parts, Eigen::VectorXd* grad = nullptr);
double srf_loss(const kinematics::LabeledHandCloud& hand, const kinematics::PosedHand& posed,
                const EnergyWeights& weights, Eigen::VectorXd* grad = nullptr);

/// Shared, immutable description of one grasp problem.
class EnergyModel {
 public:
  EnergyModel(const geometry::ObjectModel& object, contact::RobotContact rc, const kinematics::HandModel& model,
              EnergyWeights weights, kinematics::LabeledHandCloud hand);

  const kinematics::HandModel& model() const { return *model_; }
  const geometry::ObjectModel& object() const { return *object_; }
  const contact::RobotContact& robot_contact() const { return rc_; }
  const EnergyWeights& weights() const { return weights_; }
  const kinematics::LabeledHandCloud& hand_cloud() const { return hand_; }
  int dimension() const { return kinematics::kWristDofs + model_->dof_count(); }

  /// Term breakdown at `pose`; fills the weighted total gradient when non-null.
  EnergyTerms evaluate(const kinematics::HandPose& pose, Eigen::VectorXd* grad = nullptr) const;
  double energy(const kinematics::HandPose& pose) const { return weighted_total(evaluate(pose), weights_); }

  /// Per-term unweighted gradients, for testing.
  struct TermGradients {
    Eigen::VectorXd contact, spf, erf, srf;
  };
  EnergyTerms evaluate_terms(const kinematics::HandPose& pose, TermGradients& grads) const;

 private:
  const geometry::ObjectModel* object_;
  contact::RobotContact rc_;
  const kinematics::HandModel* model_;
  EnergyWeights weights_;
  kinematics::LabeledHandCloud hand_;
  std::vector<Vec3> active_points_;
  contact::RobotContact active_contact_;
  std::vector<std::vector<bool>> adjacent_;
};

}  // namespace dexsynth::optimize
