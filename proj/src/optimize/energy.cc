#include "dexsynth/optimize/energy.h"

#include <algorithm>
#include <cmath>

#include "dexsynth/common/error.h"
#include "dexsynth/geometry/point_index.h"
#include "dexsynth/kinematics/part_sdf.h"

namespace dexsynth::optimize {

using kinematics::LabeledHandCloud;
using kinematics::PosedHand;

void validate(const EnergyWeights& w) {
  if (w.w_contact < 0 || w.w_spf < 0 || w.w_erf < 0 || w.w_srf < 0) throw ValidationError("energy weights must be >= 0");
  if (!(w.eta > 0)) throw ValidationError("eta must be > 0");
  if (!(w.spf_threshold > 0) || !(w.d_th > 0)) throw ValidationError("energy thresholds must be > 0");
}

double weighted_total(const EnergyTerms& t, const EnergyWeights& w) {
  return w.w_contact * t.contact + w.w_spf * t.spf + w.w_erf * t.erf + w.w_srf * t.srf;
}

double spf_value(std::span<const double> distances, double threshold, double eta) {
  double sum = 0.0;
  int count = 0;
  for (double d : distances) {
    const double a = std::abs(d);
    if (a <= threshold) {
      sum += std::sqrt(a);
      ++count;
    }
  }
  return sum / (count + eta);
}

double erf_value(std::span<const double> distances, std::span<const int> part_of, int parts) {
  std::vector<double> worst(parts + 1, 0.0);
  for (std::size_t k = 0; k < distances.size(); ++k) {
    const int b = part_of[k];
    if (b < 1 || b > parts) continue;
    worst[b] = std::max(worst[b], -std::min(0.0, distances[k]));
  }
  double sum = 0.0;
  for (int b = 1; b <= parts; ++b) sum += worst[b];
  return sum / parts;
}

std::vector<std::vector<bool>> adjacent_links(const kinematics::HandModel& model) {
  const std::size_t n = model.links().size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t l = 0; l < n; ++l) {
    if (model.link(static_cast<int>(l)).geometries.empty()) continue;
    int j = model.link(static_cast<int>(l)).parent_joint;
    while (j >= 0) {
      const int parent = model.joint(j).parent;
      if (!model.link(parent).geometries.empty()) {
        adj[l][parent] = adj[parent][l] = true;
        break;
      }
      j = model.link(parent).parent_joint;
    }
  }
  return adj;
}

namespace {

// Shared pair enumeration for the self-collision hinge.
template <typename F>
void for_each_srf_pair(std::span<const Vec3> points, std::span<const int> part_of, std::span<const int> link_of,
                       const std::vector<std::vector<bool>>& adjacent, double d_th, F&& f) {
  const geometry::KdTree tree(points);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int j : tree.within(points[i], d_th)) {
      if (j <= static_cast<int>(i) || part_of[i] == part_of[j]) continue;
      if (adjacent[link_of[i]][link_of[j]]) continue;
      const double r = (points[i] - points[j]).norm();
      if (r < d_th) f(static_cast<int>(i), j, r);
    }
  }
}

double spf_from_samples(const LabeledHandCloud& hand, const PosedHand& posed,
                        const std::vector<geometry::SdfSample>& samples, const EnergyWeights& w,
                        Eigen::VectorXd* grad) {
  std::vector<double> dist(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) dist[k] = samples[k].distance;
  const double value = spf_value(dist, w.spf_threshold, w.eta);
  if (grad) {
    int count = 0;
    for (double d : dist) count += std::abs(d) <= w.spf_threshold;
    const double denom = count + w.eta;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const double a = std::abs(dist[k]);
      if (a > w.spf_threshold || a == 0.0) continue;
      const double s = dist[k] < 0.0 ? -1.0 : 1.0;
      const Vec3 g = (s / (2.0 * std::sqrt(a) * denom)) * samples[k].gradient;
      posed.add_jacobian_transpose(hand.link_of[k], hand.points[k], g, *grad);
    }
  }
  return value;
}

double erf_from_samples(const LabeledHandCloud& hand, const PosedHand& posed,
                        const std::vector<geometry::SdfSample>& samples, int parts, Eigen::VectorXd* grad) {
  std::vector<double> worst(parts + 1, 0.0);
  std::vector<int> arg(parts + 1, -1);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const int b = hand.part_of[k];
    if (b < 1 || b > parts) continue;
    const double pen = -std::min(0.0, samples[k].distance);
    if (pen > worst[b]) {
      worst[b] = pen;
      arg[b] = static_cast<int>(k);
    }
  }
  double sum = 0.0;
  for (int b = 1; b <= parts; ++b) {
    sum += worst[b];
    if (grad && arg[b] >= 0) {
      const int k = arg[b];
      posed.add_jacobian_transpose(hand.link_of[k], hand.points[k], -samples[k].gradient / parts, *grad);
    }
  }
  return sum / parts;
}

double srf_with_adjacency(const LabeledHandCloud& hand, const PosedHand& posed,
                          const std::vector<std::vector<bool>>& adjacent, double d_th, int parts,
                          Eigen::VectorXd* grad) {
  double sum = 0.0;
  for_each_srf_pair(hand.points, hand.part_of, hand.link_of, adjacent, d_th, [&](int i, int j, double r) {
    sum += d_th - r;
    if (grad && r > 0.0) {
      const Vec3 u = (hand.points[i] - hand.points[j]) / (r * parts);
      posed.add_jacobian_transpose(hand.link_of[i], hand.points[i], -u, *grad);
      posed.add_jacobian_transpose(hand.link_of[j], hand.points[j], u, *grad);
    }
  });
  return sum / parts;
}

std::vector<geometry::SdfSample> sample_hand(const LabeledHandCloud& hand, const geometry::SdfQuery& sdf) {
  std::vector<geometry::SdfSample> out(hand.points.size());
  for (std::size_t k = 0; k < hand.points.size(); ++k) out[k] = sdf.sample(hand.points[k]);
  return out;
}

}  // namespace

double srf_value(std::span<const Vec3> points, std::span<const int> part_of, std::span<const int> link_of,
                 const std::vector<std::vector<bool>>& adjacent, double d_th, int parts) {
  double sum = 0.0;
  for_each_srf_pair(points, part_of, link_of, adjacent, d_th, [&](int, int, double r) { sum += d_th - r; });
  return sum / parts;
}

double contact_loss(std::span<const Vec3> object, const contact::RobotContact& rc, const PosedHand& hand,
                    Eigen::VectorXd* grad) {
  if (rc.arity != hand.model().part_count()) {
    throw Error("part arity mismatch: contact has " + std::to_string(rc.arity) + " parts, hand has " +
                std::to_string(hand.model().part_count()));
  }
  if (object.size() != rc.size()) throw Error("contact_loss: contact and object sizes differ");
  double sum = 0.0;
  for (std::size_t k = 0; k < rc.size(); ++k) {
    const double c = rc.contact[k];
    if (c <= 0.0 || rc.part[k] == 0) continue;
    const kinematics::PartDistance pd = kinematics::part_distance(hand, rc.part[k], object[k]);
    sum += c * std::abs(pd.distance);
    if (grad && pd.distance != 0.0) {
      // The field moves with the link, so d(sdf)/d(pose) = -grad . J at the fixed point.
      const double s = pd.distance < 0.0 ? -1.0 : 1.0;
      hand.add_jacobian_transpose(pd.link, object[k], -s * c * pd.gradient, *grad);
    }
  }
  return sum;
}

double spf_loss(const LabeledHandCloud& hand, const PosedHand& posed, const geometry::SdfQuery& sdf,
                const EnergyWeights& weights, Eigen::VectorXd* grad) {
  return spf_from_samples(hand, posed, sample_hand(hand, sdf), weights, grad);
}

double erf_loss(const LabeledHandCloud& hand, const PosedHand& posed, const geometry::SdfQuery& sdf, int parts,
                Eigen::VectorXd* grad) {
  return erf_from_samples(hand, posed, sample_hand(hand, sdf), parts, grad);
}

double srf_loss(const LabeledHandCloud& hand, const PosedHand& posed, const EnergyWeights& weights,
                Eigen::VectorXd* grad) {
  const int parts = posed.model().part_count();
  if (parts < 2) throw Error("srf_loss needs at least two parts");
  return srf_with_adjacency(hand, posed, adjacent_links(posed.model()), weights.d_th, parts, grad);
}

EnergyModel::EnergyModel(const geometry::ObjectModel& object, contact::RobotContact rc,
                         const kinematics::HandModel& model, EnergyWeights weights, LabeledHandCloud hand)
    : object_(&object),
      rc_(std::move(rc)),
      model_(&model),
      weights_(weights),
      hand_(std::move(hand)),
      adjacent_(adjacent_links(model)) {
  validate(weights_);
  contact::validate(rc_);
  if (rc_.arity != model.part_count()) {
    throw Error("part arity mismatch: contact has " + std::to_string(rc_.arity) + " parts, hand has " +
                std::to_string(model.part_count()));
  }
  if (rc_.size() != object.cloud.size()) throw Error("contact map size does not match the object cloud");
  active_contact_.arity = rc_.arity;
  for (std::size_t k = 0; k < rc_.size(); ++k) {
    if (rc_.contact[k] > 0.0f && rc_.part[k] != 0) {
      active_points_.push_back(object.cloud.points[k]);
      active_contact_.contact.push_back(rc_.contact[k]);
      active_contact_.part.push_back(rc_.part[k]);
    }
  }
}

EnergyTerms EnergyModel::evaluate(const kinematics::HandPose& pose, Eigen::VectorXd* grad) const {
  if (!grad) {
    const PosedHand posed(*model_, pose);
    LabeledHandCloud hand = hand_;
    hand.repose(posed);
    const auto samples = sample_hand(hand, object_->sdf);
    EnergyTerms t;
    t.contact = contact_loss(active_points_, active_contact_, posed);
    t.spf = spf_from_samples(hand, posed, samples, weights_, nullptr);
    t.erf = erf_from_samples(hand, posed, samples, model_->part_count(), nullptr);
    t.srf = model_->part_count() < 2
                ? 0.0
                : srf_with_adjacency(hand, posed, adjacent_, weights_.d_th, model_->part_count(), nullptr);
    return t;
  }
  TermGradients g;
  const EnergyTerms t = evaluate_terms(pose, g);
  *grad = weights_.w_contact * g.contact + weights_.w_spf * g.spf + weights_.w_erf * g.erf + weights_.w_srf * g.srf;
  return t;
}

EnergyTerms EnergyModel::evaluate_terms(const kinematics::HandPose& pose, TermGradients& g) const {
  const PosedHand posed(*model_, pose);
  const int n = dimension();
  g.contact = g.spf = g.erf = g.srf = Eigen::VectorXd::Zero(n);
  LabeledHandCloud hand = hand_;
  hand.repose(posed);
  const auto samples = sample_hand(hand, object_->sdf);
  EnergyTerms t;
  t.contact = contact_loss(active_points_, active_contact_, posed, &g.contact);
  t.spf = spf_from_samples(hand, posed, samples, weights_, &g.spf);
  t.erf = erf_from_samples(hand, posed, samples, model_->part_count(), &g.erf);
  t.srf = model_->part_count() < 2
              ? 0.0
              : srf_with_adjacency(hand, posed, adjacent_, weights_.d_th, model_->part_count(), &g.srf);
  return t;
}

}  // namespace dexsynth::optimize
