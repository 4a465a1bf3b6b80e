#include "dexsynth/kinematics/hand_model.h"

#include <cmath>
#include <deque>
#include <set>

#include "dexsynth/common/error.h"

namespace dexsynth::kinematics {

HandModel::HandModel(std::string name, std::vector<Link> links, std::vector<Joint> joints, const PartLabels& labels)
    : name_(std::move(name)), links_(std::move(links)), joints_(std::move(joints)) {
  const int n_links = static_cast<int>(links_.size());
  if (n_links == 0) throw ValidationError("hand model has no links");
  {
    std::set<std::string> names;
    for (const Link& l : links_) {
      if (!names.insert(l.name).second) throw ValidationError("duplicate link name '" + l.name + "'");
    }
  }
  for (Link& l : links_) l.parent_joint = -1;

  std::vector<std::vector<int>> children(n_links);
  for (int j = 0; j < static_cast<int>(joints_.size()); ++j) {
    Joint& joint = joints_[j];
    if (joint.parent < 0 || joint.parent >= n_links || joint.child < 0 || joint.child >= n_links) {
      throw ValidationError("joint '" + joint.name + "' references an unknown link");
    }
    if (joint.parent == joint.child) throw ValidationError("joint '" + joint.name + "' forms a cycle");
    Link& child = links_[joint.child];
    if (child.parent_joint >= 0) {
      throw ValidationError("link '" + child.name + "' has more than one parent joint");
    }
    child.parent_joint = j;
    children[joint.parent].push_back(j);

    if (joint.type != JointType::kFixed) {
      if (!std::isfinite(joint.lower) || !std::isfinite(joint.upper) || joint.lower > joint.upper) {
        throw ValidationError("joint '" + joint.name + "' has invalid limits");
      }
      const double len = joint.axis.norm();
      if (!(len > 1e-12)) throw ValidationError("joint '" + joint.name + "' has a zero axis");
      joint.axis /= len;
      joint.dof = static_cast<int>(dof_joints_.size());
      dof_joints_.push_back(j);
    } else {
      joint.dof = -1;
    }
  }

  for (int i = 0; i < n_links; ++i) {
    if (links_[i].parent_joint < 0) {
      if (root_ >= 0) {
        throw ValidationError("links '" + links_[root_].name + "' and '" + links_[i].name +
                              "' both lack a parent; the joint graph is not a single tree");
      }
      root_ = i;
    }
  }
  if (root_ < 0) throw ValidationError("joint graph has a cycle (no root link)");

  chains_.assign(n_links, {});
  std::deque<int> queue{root_};
  while (!queue.empty()) {
    const int l = queue.front();
    queue.pop_front();
    order_.push_back(l);
    for (int j : children[l]) {
      const int c = joints_[j].child;
      chains_[c] = chains_[l];
      if (joints_[j].dof >= 0) chains_[c].push_back(j);
      queue.push_back(c);
    }
  }
  if (static_cast<int>(order_.size()) != n_links) {
    throw ValidationError("joint graph has a cycle (links unreachable from root)");
  }

  const int dofs = dof_count();
  lower_.resize(dofs);
  upper_.resize(dofs);
  for (int d = 0; d < dofs; ++d) {
    lower_[d] = joints_[dof_joints_[d]].lower;
    upper_[d] = joints_[dof_joints_[d]].upper;
  }

  part_count_ = labels.part_count;
  if (part_count_ < 1) throw ValidationError("part labels declare no parts");
  part_names_.resize(part_count_ + 1);
  for (int b = 1; b <= part_count_; ++b) {
    auto it = labels.part_names.find(b);
    part_names_[b] = it != labels.part_names.end() ? it->second : "part" + std::to_string(b);
  }
  for (const auto& [link_name, part] : labels.link_parts) {
    const int idx = link_index(link_name);
    if (idx < 0) throw ValidationError("part labels name unknown link '" + link_name + "'");
    if (part < 1 || part > part_count_) {
      throw ValidationError("link '" + link_name + "' has part id " + std::to_string(part) + " outside 1.." +
                            std::to_string(part_count_));
    }
    links_[idx].part = part;
  }
  part_links_.assign(part_count_ + 1, {});
  for (int i = 0; i < n_links; ++i) {
    if (links_[i].geometries.empty()) continue;
    if (links_[i].part == 0) throw ValidationError("link '" + links_[i].name + "' has geometry but no part label");
    part_links_[links_[i].part].push_back(i);
  }

  const double palm_len = labels.palm_axis.norm();
  if (!(palm_len > 1e-12)) throw ValidationError("palm axis must be non-zero");
  palm_axis_ = labels.palm_axis / palm_len;
}

int HandModel::link_index(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(links_.size()); ++i) {
    if (links_[i].name == name) return i;
  }
  return -1;
}

const std::string& HandModel::part_name(int part) const {
  if (part < 1 || part > part_count_) throw Error("unknown part id " + std::to_string(part));
  return part_names_[part];
}

const std::vector<int>& HandModel::part_links(int part) const {
  if (part < 1 || part > part_count_) throw Error("unknown part id " + std::to_string(part));
  return part_links_[part];
}

}  // namespace dexsynth::kinematics
