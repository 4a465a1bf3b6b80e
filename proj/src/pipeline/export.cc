#include "dexsynth/pipeline/export.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "dexsynth/common/error.h"
#include "dexsynth/contact/contact_io.h"
#include "dexsynth/kinematics/forward_kinematics.h"
#include "dexsynth/kinematics/shape.h"
#include "dexsynth/kinematics/urdf_parser.h"
#include "dexsynth/pipeline/commands.h"

namespace dexsynth::pipeline {

namespace fs = std::filesystem;

geometry::Rgb heat_color(double c) {
  const double t = std::clamp(c, 0.0, 1.0);
  const auto red = static_cast<std::uint8_t>(std::lround(255.0 * t));
  return {red, 0, static_cast<std::uint8_t>(255 - red)};
}

geometry::TriangleMesh posed_hand_mesh(const kinematics::HandModel& model, const kinematics::HandPose& pose) {
  const auto links = kinematics::forward_kinematics(model, pose);
  geometry::TriangleMesh out;
  for (std::size_t l = 0; l < links.size(); ++l) {
    for (const auto& g : model.link(static_cast<int>(l)).geometries) {
      geometry::TriangleMesh part = kinematics::tessellate(g.shape);
      geometry::transform_in_place(part, links[l] * g.origin);
      geometry::append(out, part);
    }
  }
  return out;
}

void write_scene_obj(std::ostream& out, const kinematics::HandModel& model, const kinematics::HandPose& pose,
                     const geometry::TriangleMesh& object) {
  geometry::TriangleMesh scene = posed_hand_mesh(model, pose);
  geometry::append(scene, object);
  geometry::write_obj(out, scene);
}

void write_contact_heatmap(std::ostream& out, const geometry::PointCloud& cloud, const contact::ContactMap& map) {
  if (cloud.size() != map.size()) throw Error("contact map does not match the object cloud");
  std::vector<geometry::Rgb> colors(map.size());
  for (std::size_t k = 0; k < map.size(); ++k) colors[k] = heat_color(map.contact[k]);
  geometry::write_point_ply(out, cloud, &colors);
}

std::vector<fs::path> cmd_export(const fs::path& records_path, const fs::path& out_dir, ExportKind kind) {
  const auto records = read_records(records_path);
  const fs::path base = records_path.parent_path();
  fs::create_directories(out_dir);
  std::vector<fs::path> written;
  auto open = [&](const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw Error("cannot open " + p.string() + " for writing");
    written.push_back(p);
    return out;
  };
  if (kind == ExportKind::kScene) {
    for (const auto& r : records) {
      const auto model = kinematics::load_hand_model(r.hand_description, r.hand_parts);
      const auto object = geometry::load_mesh(r.object_path);
      auto out = open(out_dir / (r.record_id + ".obj"));
      write_scene_obj(out, model, r.pose, object);
    }
    return written;
  }
  std::set<std::string> done;
  for (const auto& r : records) {
    std::ifstream cloud_in(base / r.object_cloud);
    if (!cloud_in) throw Error("cannot open object cloud " + (base / r.object_cloud).string());
    const geometry::PointCloud cloud = geometry::read_point_ply(cloud_in);
    for (const std::string& file : {r.human_contact_file, r.robot_contact_file}) {
      if (!done.insert(file).second) continue;
      const auto loaded = contact::load_contact(base / file, std::nullopt, cloud.size());
      auto out = open(out_dir / (fs::path(file).filename().replace_extension(".ply")));
      write_contact_heatmap(out, cloud, loaded.map);
    }
  }
  return written;
}

}  // namespace dexsynth::pipeline
