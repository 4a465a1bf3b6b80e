#include "dexsynth/pipeline/commands.h"

#include <fstream>
#include <iomanip>
#include <map>

#include "dexsynth/alignment/mapping.h"
#include "dexsynth/common/error.h"
#include "dexsynth/common/hash.h"
#include "dexsynth/contact/contact_io.h"
#include "dexsynth/evaluate/diversity.h"
#include "dexsynth/geometry/mesh_io.h"
#include "dexsynth/kinematics/urdf_parser.h"
#include "dexsynth/optimize/synthesize.h"

namespace dexsynth::pipeline {

namespace fs = std::filesystem;

namespace {

struct ContactJob {
  contact::HumanContact contact;
  std::string provider;
  std::uint64_t seed = 0;
  std::string source;
};

std::vector<ContactJob> make_contacts(const RunConfig& cfg, const geometry::ObjectModel& object,
                                      std::uint64_t object_key) {
  std::vector<ContactJob> jobs;
  if (cfg.contact.kind == ContactConfig::Kind::kHeuristic) {
    for (int ci = 0; ci < cfg.contact.count; ++ci) {
      ContactJob job;
      job.provider = "heuristic";
      job.seed = derive_seed({cfg.seed, object_key, static_cast<std::uint64_t>(ci)});
      job.contact = contact::generate_contact(contact::HeuristicGenerator{job.seed, cfg.contact.params}, object.cloud);
      jobs.push_back(std::move(job));
    }
    return jobs;
  }
  for (const auto& f : cfg.contact.files) {
    const auto loaded = contact::load_contact(f, contact::kHumanPartCount);
    if (loaded.object_hash != object.content_hash) continue;
    ContactJob job;
    job.provider = "file";
    job.source = file_hash(f);
    job.contact = contact::generate_contact(contact::FileLoader{f, object.content_hash}, object.cloud);
    jobs.push_back(std::move(job));
  }
  return jobs;
}

std::string unique_id(const fs::path& path, std::map<std::string, int>& used) {
  std::string id = path.stem().string();
  const int n = used[id]++;
  if (n > 0) id += "_" + std::to_string(n);
  return id;
}

}  // namespace

SynthesizeSummary cmd_synthesize(const fs::path& config_path, std::optional<int> workers,
                                 std::optional<fs::path> output_dir, std::ostream& log) {
  RunConfig cfg = load_run_config(config_path);
  if (workers) {
    if (*workers < 1) throw ValidationError("workers must be >= 1");
    cfg.workers = cfg.optimizer.workers = *workers;
  }
  if (output_dir) cfg.output_dir = fs::absolute(*output_dir);
  const kinematics::HandModel model = kinematics::load_hand_model(cfg.hand.description, cfg.hand.parts);
  const alignment::HumanRobotMapping mapping = alignment::load_mapping(cfg.hand.mapping);
  if (mapping.part_count() != model.part_count()) {
    throw ValidationError("mapping has " + std::to_string(mapping.part_count()) + " groups but the hand has " +
                          std::to_string(model.part_count()) + " parts");
  }
  fs::create_directories(cfg.output_dir / "clouds");
  fs::create_directories(cfg.output_dir / "contacts");

  SynthesizeSummary summary;
  summary.records_path = cfg.output_dir / "records.jsonl";
  std::vector<GraspRecord> records;
  std::vector<std::pair<std::string, std::vector<double>>> trajectories;
  std::map<std::string, int> used_ids;

  for (const fs::path& object_path : cfg.objects) {
    ++summary.objects;
    const std::string object_id = unique_id(object_path, used_ids);
    try {
      const std::string hash = file_hash(object_path);
      const std::uint64_t key = fnv1a64(hash);
      geometry::MeshLoadReport report;
      geometry::TriangleMesh mesh = geometry::load_mesh(object_path, &report);
      for (const auto& w : report.warnings) log << object_id << ": " << w << '\n';
      const geometry::ObjectModel object = geometry::make_object_model(
          std::move(mesh), static_cast<std::size_t>(cfg.object_points), derive_seed({cfg.seed, key}), object_id, hash);
      const std::string cloud_rel = "clouds/" + object_id + ".ply";
      {
        std::ofstream out(cfg.output_dir / cloud_rel);
        geometry::write_point_ply(out, object.cloud);
      }
      const auto jobs = make_contacts(cfg, object, key);
      if (jobs.empty()) log << object_id << ": no contact maps for this object\n";
      for (std::size_t ci = 0; ci < jobs.size(); ++ci) {
        ++summary.contacts;
        const ContactJob& job = jobs[ci];
        optimize::OptimizerConfig ocfg = cfg.optimizer;
        ocfg.seed = derive_seed({cfg.seed, key, ci, 1});
        optimize::SynthesisResult result;
        try {
          result = optimize::synthesize(object, job.contact, model, mapping, cfg.weights, ocfg);
        } catch (const Error& e) {
          ++summary.failed_contacts;
          log << object_id << " contact " << ci << ": " << e.what() << '\n';
          continue;
        }
        const std::string stem = "contacts/" + object_id + "_c" + std::to_string(ci);
        contact::save_contact(cfg.output_dir / (stem + ".human.bin"), job.contact, hash);
        contact::save_contact(cfg.output_dir / (stem + ".robot.bin"), result.robot_contact, hash);
        for (std::size_t g = 0; g < result.grasps.size(); ++g) {
          const optimize::GraspCandidate& cand = result.grasps[g];
          GraspRecord r;
          r.record_id = object_id + "_c" + std::to_string(ci) + "_g" + std::to_string(g);
          r.object_id = object_id;
          r.object_path = object_path.string();
          r.object_hash = hash;
          r.object_cloud = cloud_rel;
          r.object_points = static_cast<int>(object.cloud.size());
          r.hand_name = model.name();
          r.hand_description = cfg.hand.description.string();
          r.hand_parts = cfg.hand.parts.string();
          r.hand_mapping = cfg.hand.mapping.string();
          r.contact_provider = job.provider;
          r.contact_seed = job.seed;
          r.contact_source = job.source;
          r.contact_index = static_cast<int>(ci);
          r.human_contact_file = stem + ".human.bin";
          r.robot_contact_file = stem + ".robot.bin";
          r.init_id = cand.init_id;
          r.rank = static_cast<int>(g);
          r.pose = cand.pose;
          r.energy = cand.energy;
          r.terms = cand.terms;
          r.stability = evaluate::success_test(model, cand.pose, object, cfg.evaluation);
          r.tool_version = kToolVersion;
          r.timestamp = utc_timestamp();
          if (cfg.write_trajectories) trajectories.emplace_back(r.record_id, cand.trajectory);
          records.push_back(std::move(r));
        }
      }
    } catch (const Error& e) {
      ++summary.failed_objects;
      log << object_id << ": " << e.what() << '\n';
    }
  }

  write_records(summary.records_path, records);
  summary.records = static_cast<int>(records.size());
  if (cfg.write_trajectories) {
    std::ofstream out(cfg.output_dir / "trajectories.csv");
    out << "record_id,iteration,energy\n" << std::setprecision(17);
    for (const auto& [id, traj] : trajectories) {
      for (std::size_t i = 0; i < traj.size(); ++i) out << id << ',' << i << ',' << traj[i] << '\n';
    }
  }
  nlohmann::json manifest = {{"tool_version", kToolVersion},
                             {"timestamp", utc_timestamp()},
                             {"config_path", fs::absolute(config_path).string()},
                             {"config", to_json(cfg)},
                             {"hand", model.name()},
                             {"objects", summary.objects},
                             {"failed_objects", summary.failed_objects},
                             {"contacts", summary.contacts},
                             {"failed_contacts", summary.failed_contacts},
                             {"records", summary.records}};
  std::ofstream(cfg.output_dir / "manifest.json") << manifest.dump(2) << '\n';
  return summary;
}

std::vector<HandMetrics> cmd_evaluate(const fs::path& records_path, const fs::path& config_path) {
  const RunConfig cfg = load_run_config(config_path);
  const auto records = read_records(records_path);
  if (records.empty()) throw Error("no records in " + records_path.string());

  struct Group {
    std::vector<kinematics::HandPose> successes;
    HandMetrics m;
    double pen_sum = 0.0;
  };
  std::map<std::string, Group> groups;
  std::map<std::string, kinematics::HandModel> models;
  std::map<std::string, geometry::ObjectModel> objects;
  const fs::path base = records_path.parent_path();

  for (const auto& r : records) {
    const std::string model_key = r.hand_description + "|" + r.hand_parts;
    auto mit = models.find(model_key);
    if (mit == models.end()) {
      mit = models.emplace(model_key, kinematics::load_hand_model(r.hand_description, r.hand_parts)).first;
    }
    auto oit = objects.find(r.object_path);
    if (oit == objects.end()) {
      std::ifstream in(base / r.object_cloud);
      if (!in) throw Error("cannot open object cloud " + (base / r.object_cloud).string());
      geometry::PointCloud cloud = geometry::read_point_ply(in);
      geometry::ObjectModel object{r.object_id, r.object_hash, std::move(cloud),
                                   geometry::SdfQuery(geometry::load_mesh(r.object_path)), Vec3::Zero(), 0.0};
      for (const Vec3& p : object.cloud.points) object.centroid += p;
      object.centroid /= static_cast<double>(object.cloud.size());
      oit = objects.emplace(r.object_path, std::move(object)).first;
    }
    const auto report = evaluate::success_test(mit->second, r.pose, oit->second, cfg.evaluation);
    Group& g = groups[r.hand_name];
    g.m.hand = r.hand_name;
    ++g.m.total;
    g.pen_sum += report.max_penetration;
    g.m.max_penetration = std::max(g.m.max_penetration, report.max_penetration);
    if (report.success) {
      ++g.m.successes;
      g.successes.push_back(r.pose);
    }
  }
  std::vector<HandMetrics> out;
  for (auto& [name, g] : groups) {
    g.m.success_rate = static_cast<double>(g.m.successes) / g.m.total;
    g.m.mean_penetration = g.pen_sum / g.m.total;
    if (g.successes.size() >= 2) {
      const auto d = evaluate::diversity(g.successes);
      g.m.diversity = d.angular;
      g.m.translation_diversity = d.translation;
    }
    out.push_back(g.m);
  }
  return out;
}

void write_metrics_csv(std::ostream& out, const std::vector<HandMetrics>& metrics) {
  out << "hand,total,successes,success_rate,diversity_rad,translation_diversity_m,mean_penetration_m,"
         "max_penetration_m\n";
  out << std::setprecision(10);
  for (const auto& m : metrics) {
    out << m.hand << ',' << m.total << ',' << m.successes << ',' << m.success_rate << ',';
    if (m.diversity) {
      out << *m.diversity << ',' << *m.translation_diversity;
    } else {
      out << "N/A,N/A";
    }
    out << ',' << m.mean_penetration << ',' << m.max_penetration << '\n';
  }
}

nlohmann::json cmd_validate(const fs::path& config_path) {
  const RunConfig cfg = load_run_config(config_path);
  const kinematics::HandModel model = kinematics::load_hand_model(cfg.hand.description, cfg.hand.parts);
  const alignment::HumanRobotMapping mapping = alignment::load_mapping(cfg.hand.mapping);
  if (mapping.part_count() != model.part_count()) {
    throw ValidationError("mapping has " + std::to_string(mapping.part_count()) + " groups but the hand has " +
                          std::to_string(model.part_count()) + " parts");
  }
  for (const auto& f : cfg.contact.files) contact::load_contact(f, contact::kHumanPartCount);
  for (const auto& o : cfg.objects) {
    geometry::MeshLoadReport report;
    geometry::validate(geometry::load_mesh(o, &report));
  }
  nlohmann::json effective = to_json(cfg);
  effective["hand"]["name"] = model.name();
  effective["hand"]["parts_count"] = model.part_count();
  effective["hand"]["dofs"] = model.dof_count();
  return effective;
}

}  // namespace dexsynth::pipeline
