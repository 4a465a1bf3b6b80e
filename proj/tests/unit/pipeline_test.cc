#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "dexsynth/common/error.h"
#include "dexsynth/pipeline/commands.h"
#include "dexsynth/pipeline/export.h"
#include "test_support.h"

namespace dexsynth::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json small_config(const fs::path& out) {
  const fs::path d = testing::data_dir();
  return {{"objects", (d / "objects" / "sphere_r50.obj").string()},
          {"object_points", 512},
          {"hand",
           {{"description", (d / "hands" / "tri_finger.urdf").string()},
            {"parts", (d / "hands" / "tri_finger.parts.json").string()},
            {"mapping", (d / "mappings" / "tri_finger.json").string()}}},
          {"contact", {{"provider", "heuristic"}, {"count", 2}}},
          {"optimizer", {{"iterations", 20}, {"n_init_poses", 4}, {"top_k", 2}}},
          {"output_dir", out.string()},
          {"seed", 11}};
}

fs::path write_config(const fs::path& dir, const json& doc, const std::string& name = "config.json") {
  const fs::path p = dir / name;
  std::ofstream(p) << doc.dump(2);
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_timestamps(const fs::path& records) {
  std::ifstream in(records);
  std::string line, out;
  while (std::getline(in, line)) {
    json j = json::parse(line);
    j.erase("timestamp");
    out += j.dump() + "\n";
  }
  return out;
}

TEST(RunConfig, UnknownKeysAreErrors) {
  json doc = small_config("/tmp/x");
  doc["colour"] = 1;
  EXPECT_THROW(parse_run_config(doc, "/"), ValidationError);
  doc = small_config("/tmp/x");
  doc["optimizer"]["learning_rate"] = 0.1;
  EXPECT_THROW(parse_run_config(doc, "/"), ValidationError);
}

TEST(RunConfig, RelativePathsResolveAgainstConfigDir) {
  json doc = small_config("out");
  doc["hand"]["mapping"] = "maps/m.json";
  const RunConfig cfg = parse_run_config(doc, "/base/dir");
  EXPECT_EQ(cfg.hand.mapping, fs::path("/base/dir/maps/m.json"));
  EXPECT_EQ(cfg.output_dir, fs::path("/base/dir/out"));
  EXPECT_EQ(cfg.optimizer.top_k, 2);
  EXPECT_EQ(cfg.object_points, 512);
}

TEST(RunConfig, GlobWithoutMatchIsAnError) {
  json doc = small_config("out");
  doc["objects"] = json::array({(testing::data_dir() / "objects" / "*.obj").string()});
  RunConfig cfg = parse_run_config(doc, "/");
  resolve_objects(cfg);
  ASSERT_EQ(cfg.objects.size(), 2u);
  EXPECT_LT(cfg.objects[0], cfg.objects[1]);
  cfg.object_patterns.push_back((testing::data_dir() / "objects" / "*.stl").string());
  EXPECT_THROW(resolve_objects(cfg), ValidationError);
}

TEST(RunConfig, WorkersFromEnvironment) {
  ::setenv(kWorkersEnv, "3", 1);
  EXPECT_EQ(default_workers(), 3);
  EXPECT_EQ(parse_run_config(small_config("out"), "/").workers, 3);
  ::unsetenv(kWorkersEnv);
  EXPECT_EQ(default_workers(), 1);
}

TEST(Validate, EffectiveDefaultsOnSuccess) {
  const fs::path dir = testing::scratch_dir("validate_ok");
  const json eff = cmd_validate(write_config(dir, small_config(dir / "out")));
  EXPECT_EQ(eff["hand"]["name"], "tri_finger");
  EXPECT_EQ(eff["hand"]["parts_count"], 4);
  EXPECT_TRUE(eff.contains("weights"));
  EXPECT_EQ(eff["resolved_objects"].size(), 1u);
}

TEST(Validate, BadMappingLabel) {
  const fs::path dir = testing::scratch_dir("validate_label");
  json mapping = json::parse(read_file(testing::data_dir() / "mappings" / "tri_finger.json"));
  mapping["groups"][3].push_back(17);
  std::ofstream(dir / "bad.json") << mapping.dump();
  json doc = small_config(dir / "out");
  doc["hand"]["mapping"] = (dir / "bad.json").string();
  EXPECT_THROW(cmd_validate(write_config(dir, doc)), Error);
}

TEST(Validate, UnlabeledLink) {
  const fs::path dir = testing::scratch_dir("validate_unlabeled");
  json parts = json::parse(read_file(testing::data_dir() / "hands" / "tri_finger.parts.json"));
  parts["links"].erase("thumb_distal");
  std::ofstream(dir / "parts.json") << parts.dump();
  json doc = small_config(dir / "out");
  doc["hand"]["parts"] = (dir / "parts.json").string();
  EXPECT_THROW(cmd_validate(write_config(dir, doc)), ValidationError);
}

TEST(Validate, MissingMeshFailsBeforeWork) {
  const fs::path dir = testing::scratch_dir("validate_missing");
  json doc = small_config(dir / "out");
  doc["objects"] = (dir / "nope.obj").string();
  const fs::path config = write_config(dir, doc);
  EXPECT_THROW(cmd_validate(config), ValidationError);
  std::ostringstream log;
  EXPECT_THROW(cmd_synthesize(config, std::nullopt, std::nullopt, log), ValidationError);
  EXPECT_FALSE(fs::exists(dir / "out"));
}

class SmallRun : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = testing::scratch_dir("small_run");
    config_ = write_config(dir_, small_config(dir_ / "out"));
    std::ostringstream log;
    summary_ = cmd_synthesize(config_, 1, std::nullopt, log);
  }
  static inline fs::path dir_, config_;
  static inline SynthesizeSummary summary_;
};

TEST_F(SmallRun, WritesRecordsThatRoundTrip) {
  EXPECT_EQ(summary_.objects, 1);
  EXPECT_EQ(summary_.contacts, 2);
  EXPECT_EQ(summary_.failed_contacts, 0);
  EXPECT_EQ(summary_.records, 4);
  const auto records = read_records(summary_.records_path);
  ASSERT_EQ(records.size(), 4u);
  for (const auto& r : records) {
    EXPECT_EQ(to_json(record_from_json(to_json(r))), to_json(r));
    EXPECT_TRUE(fs::exists(dir_ / "out" / r.object_cloud));
    EXPECT_TRUE(fs::exists(dir_ / "out" / r.robot_contact_file));
    EXPECT_EQ(r.hand_name, "tri_finger");
  }
  EXPECT_TRUE(fs::exists(dir_ / "out" / "manifest.json"));

  json broken = to_json(records[0]);
  broken.erase("pose");
  EXPECT_THROW(record_from_json(broken), ParseError);
}

TEST_F(SmallRun, DeterministicModuloTimestamp) {
  std::ostringstream log;
  const auto again = cmd_synthesize(config_, 2, dir_ / "again", log);
  EXPECT_EQ(strip_timestamps(again.records_path), strip_timestamps(summary_.records_path));
}

TEST_F(SmallRun, EvaluateIsReproducible) {
  const auto a = cmd_evaluate(summary_.records_path, config_);
  const auto b = cmd_evaluate(summary_.records_path, config_);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].total, 4);
  std::ostringstream sa, sb;
  write_metrics_csv(sa, a);
  write_metrics_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(a[0].diversity.has_value(), a[0].successes >= 2);
}

TEST_F(SmallRun, SingleGraspHasNoDiversity) {
  auto records = read_records(summary_.records_path);
  records.resize(1);
  records[0].stability.success = true;
  const fs::path one = dir_ / "out" / "one.jsonl";
  write_records(one, records);
  const auto m = cmd_evaluate(one, config_);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].total, 1);
  EXPECT_FALSE(m[0].diversity.has_value());
  std::ostringstream csv;
  write_metrics_csv(csv, m);
  EXPECT_NE(csv.str().find("N/A,N/A"), std::string::npos);
}

TEST_F(SmallRun, SceneExportHasHandAndObject) {
  const auto paths = cmd_export(summary_.records_path, dir_ / "scene", ExportKind::kScene);
  ASSERT_EQ(paths.size(), 4u);
  const auto records = read_records(summary_.records_path);
  const auto model = testing::fixture_hand("tri_finger");
  const auto object = geometry::load_mesh(records[0].object_path);
  const auto hand = posed_hand_mesh(model, records[0].pose);
  const auto scene = geometry::load_mesh(paths[0]);
  EXPECT_EQ(scene.vertex_count(), hand.vertex_count() + object.vertex_count());

  const auto heat = cmd_export(summary_.records_path, dir_ / "heat", ExportKind::kContactHeatmap);
  EXPECT_EQ(heat.size(), 4u);  // human and robot map for each of two contacts
}

TEST(Export, HeatColorRamp) {
  EXPECT_EQ(heat_color(0.0), (geometry::Rgb{0, 0, 255}));
  EXPECT_EQ(heat_color(1.0), (geometry::Rgb{255, 0, 0}));
  EXPECT_EQ(heat_color(-3.0), heat_color(0.0));
  EXPECT_EQ(heat_color(7.0), heat_color(1.0));

  geometry::PointCloud cloud;
  cloud.points = {Vec3(0, 0, 0), Vec3(1, 0, 0)};
  cloud.normals = {Vec3(0, 0, 1), Vec3(0, 0, 1)};
  contact::ContactMap zero;
  zero.contact = {0.0f, 0.0f};
  zero.part = {0, 0};
  std::ostringstream out;
  write_contact_heatmap(out, cloud, zero);
  std::istringstream in(out.str());
  std::string line;
  int colored = 0;
  bool body = false;
  while (std::getline(in, line)) {
    if (body) {
      std::istringstream row(line);
      double v[6];
      int r, g, b;
      for (double& x : v) row >> x;
      row >> r >> g >> b;
      EXPECT_EQ(r, 0);
      EXPECT_EQ(g, 0);
      EXPECT_EQ(b, 255);
      ++colored;
    }
    if (line == "end_header") body = true;
  }
  EXPECT_EQ(colored, 2);
}

}  // namespace
}  // namespace dexsynth::pipeline
