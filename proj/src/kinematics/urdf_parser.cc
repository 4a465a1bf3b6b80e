#include "dexsynth/kinematics/urdf_parser.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

#include "dexsynth/common/error.h"
#include "dexsynth/geometry/mesh_io.h"

namespace dexsynth::kinematics {

namespace pt = boost::property_tree;
using json = nlohmann::json;

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Vec3 parse_vec3(const std::string& text, const std::string& what) {
  std::istringstream ss(text);
  Vec3 v;
  if (!(ss >> v.x() >> v.y() >> v.z())) throw ParseError("expected three numbers for " + what + ": '" + text + "'");
  return v;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == 0) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected a number for " + what + ": '" + text + "'");
  }
}

std::optional<std::string> attr(const pt::ptree& node, const std::string& name) {
  if (auto a = node.get_child_optional("<xmlattr>." + name)) return a->data();
  return std::nullopt;
}

std::string required_attr(const pt::ptree& node, const std::string& name, const std::string& where) {
  auto a = attr(node, name);
  if (!a) throw ParseError(where + ": missing attribute '" + name + "'");
  return *a;
}

Transform parse_origin(const pt::ptree& parent) {
  Transform t = Transform::Identity();
  auto origin = parent.get_child_optional("origin");
  if (!origin) return t;
  if (auto xyz = attr(*origin, "xyz")) t.translation() = parse_vec3(*xyz, "origin xyz");
  if (auto rpy = attr(*origin, "rpy")) {
    const Vec3 r = parse_vec3(*rpy, "origin rpy");
    t.linear() = (Eigen::AngleAxisd(r.z(), Vec3::UnitZ()) * Eigen::AngleAxisd(r.y(), Vec3::UnitY()) *
                  Eigen::AngleAxisd(r.x(), Vec3::UnitX()))
                     .toRotationMatrix();
  }
  return t;
}

Shape parse_shape(const pt::ptree& geometry, const std::string& link_name, const std::filesystem::path& mesh_dir) {
  for (const auto& [tag, node] : geometry) {
    if (tag == "<xmlattr>" || tag == "<xmlcomment>") continue;
    const std::string where = "link '" + link_name + "' " + tag;
    if (tag == "sphere") {
      return SphereShape{parse_double(required_attr(node, "radius", where), where + " radius")};
    }
    if (tag == "box") return BoxShape{parse_vec3(required_attr(node, "size", where), where + " size")};
    if (tag == "cylinder") {
      return CylinderShape{parse_double(required_attr(node, "radius", where), where + " radius"),
                           parse_double(required_attr(node, "length", where), where + " length")};
    }
    if (tag == "capsule") {
      return CapsuleShape{parse_double(required_attr(node, "radius", where), where + " radius"),
                          parse_double(required_attr(node, "length", where), where + " length")};
    }
    if (tag == "mesh") {
      std::string filename = required_attr(node, "filename", where);
      const std::string prefix = "package://";
      if (filename.rfind(prefix, 0) == 0) filename = filename.substr(prefix.size());
      Vec3 scale = Vec3::Ones();
      if (auto s = attr(node, "scale")) scale = parse_vec3(*s, where + " scale");
      std::filesystem::path path = filename;
      if (path.is_relative()) path = mesh_dir / path;
      geometry::TriangleMesh mesh = geometry::load_mesh(path);
      for (Vec3& v : mesh.vertices) v = v.cwiseProduct(scale);
      geometry::compute_vertex_normals(mesh);
      return MeshShape{filename, std::make_shared<const geometry::SdfQuery>(std::move(mesh))};
    }
    throw ParseError(where + ": unknown geometry tag '" + tag + "'");
  }
  throw ParseError("link '" + link_name + "': geometry element is empty");
}

std::vector<Geometry> parse_link_geometry(const pt::ptree& link, const std::string& name,
                                          const std::filesystem::path& mesh_dir) {
  std::vector<Geometry> collision, visual;
  for (const auto& [tag, node] : link) {
    if (tag != "collision" && tag != "visual") continue;
    auto geom = node.get_child_optional("geometry");
    if (!geom) throw ParseError("link '" + name + "': " + tag + " without geometry");
    Geometry g{parse_origin(node), parse_shape(*geom, name, mesh_dir)};
    (tag == "collision" ? collision : visual).push_back(std::move(g));
  }
  return collision.empty() ? visual : collision;
}

}  // namespace

PartLabels parse_part_labels(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("part labels: ") + e.what());
  }
  PartLabels labels;
  try {
    labels.robot_name = j.value("robot_name", "");
    labels.part_count = j.at("num_parts").get<int>();
    if (j.contains("part_names")) {
      for (const auto& [key, value] : j.at("part_names").items()) {
        labels.part_names[std::stoi(key)] = value.get<std::string>();
      }
    }
    for (const auto& [key, value] : j.at("links").items()) labels.link_parts[key] = value.get<int>();
    if (j.contains("palm_axis")) {
      const auto a = j.at("palm_axis").get<std::vector<double>>();
      if (a.size() != 3) throw ParseError("part labels: palm_axis needs three components");
      labels.palm_axis = Vec3(a[0], a[1], a[2]);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("part labels: ") + e.what());
  }
  return labels;
}

PartLabels load_part_labels(const std::filesystem::path& path) { return parse_part_labels(read_text(path)); }

HandModel parse_hand_description(std::string_view urdf, const PartLabels& labels,
                                 const std::filesystem::path& mesh_dir) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(urdf)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string("URDF: ") + e.what());
  }
  auto robot = tree.get_child_optional("robot");
  if (!robot) throw ParseError("URDF: missing <robot> element");
  const std::string robot_name = attr(*robot, "name").value_or(labels.robot_name);

  std::vector<Link> links;
  std::map<std::string, int> link_ids;
  for (const auto& [tag, node] : *robot) {
    if (tag != "link") continue;
    Link link;
    link.name = required_attr(node, "name", "link");
    link.geometries = parse_link_geometry(node, link.name, mesh_dir);
    link_ids[link.name] = static_cast<int>(links.size());
    links.push_back(std::move(link));
  }

  std::vector<Joint> joints;
  for (const auto& [tag, node] : *robot) {
    if (tag != "joint") continue;
    Joint joint;
    joint.name = required_attr(node, "name", "joint");
    const std::string where = "joint '" + joint.name + "'";
    const std::string type = required_attr(node, "type", where);
    if (type == "revolute" || type == "continuous") {
      joint.type = JointType::kRevolute;
    } else if (type == "prismatic") {
      joint.type = JointType::kPrismatic;
    } else if (type == "fixed") {
      joint.type = JointType::kFixed;
    } else {
      throw ParseError(where + ": unsupported joint type '" + type + "'");
    }
    auto parent = node.get_child_optional("parent");
    auto child = node.get_child_optional("child");
    if (!parent || !child) throw ParseError(where + ": missing parent or child");
    const std::string parent_name = required_attr(*parent, "link", where + " parent");
    const std::string child_name = required_attr(*child, "link", where + " child");
    auto pit = link_ids.find(parent_name);
    auto cit = link_ids.find(child_name);
    if (pit == link_ids.end()) throw ValidationError(where + ": dangling parent reference '" + parent_name + "'");
    if (cit == link_ids.end()) throw ValidationError(where + ": dangling child reference '" + child_name + "'");
    joint.parent = pit->second;
    joint.child = cit->second;
    joint.origin = parse_origin(node);
    if (auto axis = node.get_child_optional("axis")) {
      joint.axis = parse_vec3(required_attr(*axis, "xyz", where + " axis"), where + " axis");
    } else {
      joint.axis = Vec3::UnitX();  // URDF default
    }
    if (joint.type != JointType::kFixed) {
      auto limit = node.get_child_optional("limit");
      if (!limit || !attr(*limit, "lower") || !attr(*limit, "upper")) {
        throw ParseError(where + ": missing limit on movable joint");
      }
      joint.lower = parse_double(*attr(*limit, "lower"), where + " lower limit");
      joint.upper = parse_double(*attr(*limit, "upper"), where + " upper limit");
    }
    joints.push_back(std::move(joint));
  }

  return HandModel(robot_name, std::move(links), std::move(joints), labels);
}

HandModel load_hand_model(const std::filesystem::path& urdf_path, const std::filesystem::path& labels_path) {
  return parse_hand_description(read_text(urdf_path), load_part_labels(labels_path), urdf_path.parent_path());
}

}  // namespace dexsynth::kinematics
