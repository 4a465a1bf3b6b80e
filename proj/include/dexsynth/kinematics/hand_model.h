#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "dexsynth/common/math.h"
#include "dexsynth/geometry/sdf.h"

namespace dexsynth::kinematics {

struct SphereShape {
  double radius = 0.0;
};
struct BoxShape {
  Vec3 size = Vec3::Zero();
};
/// Along the local z axis.
struct CylinderShape {
  double radius = 0.0;
  double length = 0.0;
};
/// Cylinder of `length` along z capped by hemispheres.
struct CapsuleShape {
  double radius = 0.0;
  double length = 0.0;
};
/// Triangle mesh, already scaled into the geometry frame.
struct MeshShape {
  std::string filename;
  std::shared_ptr<const geometry::SdfQuery> sdf;
};

using Shape = std::variant<SphereShape, BoxShape, CylinderShape, CapsuleShape, MeshShape>;

struct Geometry {
  Transform origin = Transform::Identity();
  Shape shape;
};

enum class JointType { kRevolute, kPrismatic, kFixed };

struct Joint {
  std::string name;
  JointType type = JointType::kFixed;
  int parent = -1;  // link index
  int child = -1;   // link index
  Transform origin = Transform::Identity();
  Vec3 axis = Vec3::UnitZ();
  double lower = 0.0;
  double upper = 0.0;
  int dof = -1;  // index into HandPose::q, -1 for fixed joints
};

struct Link {
  std::string name;
  std::vector<Geometry> geometries;
  int part = 0;  // robot part id in 1..B', 0 when the link has no geometry
  int parent_joint = -1;
};

/// Grouping of links into robot parts, supplied next to the URDF.
struct PartLabels {
  std::string robot_name;
  int part_count = 0;
  std::map<int, std::string> part_names;
  std::map<std::string, int> link_parts;
  /// Palm normal in the wrist (root link) frame.
  Vec3 palm_axis = Vec3::UnitZ();
};

/// Kinematic tree of a robot hand. Immutable once built.
class HandModel {
 public:
  /// Validates the tree and labels; throws ValidationError.
  HandModel(std::string name, std::vector<Link> links, std::vector<Joint> joints, const PartLabels& labels);

  const std::string& name() const { return name_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Joint>& joints() const { return joints_; }
  const Link& link(int i) const { return links_[i]; }
  const Joint& joint(int i) const { return joints_[i]; }
  int root() const { return root_; }
  /// Parent-before-child traversal order.
  const std::vector<int>& link_order() const { return order_; }
  int link_index(const std::string& name) const;

  int dof_count() const { return static_cast<int>(dof_joints_.size()); }
  /// Joint index backing each dof, in document order.
  const std::vector<int>& dof_joints() const { return dof_joints_; }
  const Eigen::VectorXd& lower_limits() const { return lower_; }
  const Eigen::VectorXd& upper_limits() const { return upper_; }
  /// Movable joints on the root-to-link path, root first.
  const std::vector<int>& chain_joints(int link) const { return chains_[link]; }

  int part_count() const { return part_count_; }
  const std::string& part_name(int part) const;
  /// Links carrying geometry that belong to `part`.
  const std::vector<int>& part_links(int part) const;
  const Vec3& palm_axis() const { return palm_axis_; }

 private:
  std::string name_;
  std::vector<Link> links_;
  std::vector<Joint> joints_;
  int root_ = -1;
  std::vector<int> order_;
  std::vector<int> dof_joints_;
  Eigen::VectorXd lower_, upper_;
  std::vector<std::vector<int>> chains_;
  int part_count_ = 0;
  std::vector<std::string> part_names_;
  std::vector<std::vector<int>> part_links_;
  Vec3 palm_axis_ = Vec3::UnitZ();
};

}  // namespace dexsynth::kinematics
