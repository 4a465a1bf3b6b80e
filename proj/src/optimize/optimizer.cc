#include "dexsynth/optimize/optimizer.h"

#include <cmath>
#include <numbers>

#include "dexsynth/common/error.h"
#include "dexsynth/kinematics/forward_kinematics.h"

namespace dexsynth::optimize {

using kinematics::HandPose;
using kinematics::kWristDofs;

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 20;

void normalize_block(Eigen::Ref<Eigen::VectorXd> block, double cap) {
  const double n = block.norm();
  if (n > 0.0) block *= cap / n;
}

bool finite(const EnergyTerms& t) {
  return std::isfinite(t.contact) && std::isfinite(t.spf) && std::isfinite(t.erf) && std::isfinite(t.srf);
}

}  // namespace

void validate(const OptimizerConfig& cfg) {
  if (cfg.iterations < 1) throw ValidationError("iterations must be >= 1");
  if (cfg.n_init_poses < 1) throw ValidationError("n_init_poses must be >= 1");
  if (cfg.top_k < 1 || cfg.top_k > cfg.n_init_poses) throw ValidationError("top_k must lie in 1..n_init_poses");
  if (!(cfg.step_translation > 0) || !(cfg.step_rotation > 0) || !(cfg.step_joint > 0)) {
    throw ValidationError("step sizes must be > 0");
  }
  if (!(cfg.hand_density > 0)) throw ValidationError("hand_density must be > 0");
  if (cfg.workers < 1) throw ValidationError("workers must be >= 1");
}

std::vector<HandPose> sample_initial_wrist_poses(const Vec3& centroid, double radius,
                                                 const kinematics::HandModel& model, int count,
                                                 std::uint64_t seed) {
  if (count < 1) throw Error("sample_initial_wrist_poses: count must be >= 1");
  if (!(radius > 0)) throw Error("sample_initial_wrist_poses: radius must be > 0");
  Rng rng(seed);
  std::vector<HandPose> poses;
  poses.reserve(count);
  const Eigen::VectorXd mid = 0.5 * (model.lower_limits() + model.upper_limits());
  for (int i = 0; i < count; ++i) {
    const Vec3 u = rng.unit_vector();
    const double roll = rng.uniform(0.0, 2.0 * std::numbers::pi);
    HandPose pose;
    pose.translation = centroid + radius * u;
    const Eigen::Quaterniond face = Eigen::Quaterniond::FromTwoVectors(model.palm_axis(), -u);
    pose.rotation = (Eigen::AngleAxisd(roll, -u) * face).normalized();
    pose.q = mid;
    poses.push_back(std::move(pose));
  }
  return poses;
}

GraspCandidate optimize_grasp(const EnergyModel& energy, const HandPose& init, const OptimizerConfig& cfg) {
  validate(cfg);
  const kinematics::HandModel& model = energy.model();
  const EnergyWeights& w = energy.weights();
  GraspCandidate out;
  out.pose = kinematics::clamp_to_limits(model, init);
  const int n = energy.dimension();
  Eigen::VectorXd grad(n);
  EnergyTerms terms = energy.evaluate(out.pose, &grad);
  double e = weighted_total(terms, w);
  double alpha = 1.0;
  out.trajectory.reserve(cfg.iterations + 1);
  for (int it = 0; it < cfg.iterations; ++it) {
    out.trajectory.push_back(e);
    if (!finite(terms) || !std::isfinite(e)) {
      out.valid = false;
      break;
    }
    // Drop joint components that would push past a limit.
    for (int i = 0; i < model.dof_count(); ++i) {
      const double q = out.pose.q[i];
      const double g = grad[kWristDofs + i];
      if ((q <= model.lower_limits()[i] && g > 0.0) || (q >= model.upper_limits()[i] && g < 0.0)) {
        grad[kWristDofs + i] = 0.0;
      }
    }
    Eigen::VectorXd dir = -grad;
    normalize_block(dir.segment<3>(0), cfg.step_translation);
    normalize_block(dir.segment<3>(3), cfg.step_rotation);
    if (n > kWristDofs) normalize_block(dir.tail(n - kWristDofs), cfg.step_joint);
    const double slope = grad.dot(dir);
    if (!(slope < 0.0)) break;

    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      const HandPose trial = kinematics::clamp_to_limits(model, kinematics::apply_step(out.pose, alpha * dir));
      Eigen::VectorXd trial_grad(n);
      const EnergyTerms trial_terms = energy.evaluate(trial, &trial_grad);
      const double trial_e = weighted_total(trial_terms, w);
      if (std::isfinite(trial_e) && trial_e <= e + kArmijo * alpha * slope) {
        out.pose = trial;
        terms = trial_terms;
        e = trial_e;
        grad = std::move(trial_grad);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    alpha = std::min(1.0, 2.0 * alpha);
  }
  out.terms = terms;
  out.energy = e;
  out.trajectory.push_back(e);
  if (!finite(terms) || !std::isfinite(e)) out.valid = false;
  return out;
}

}  // namespace dexsynth::optimize
