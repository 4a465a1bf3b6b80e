#include "dexsynth/pipeline/config.h"

#include <glob.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>

#include "dexsynth/common/error.h"

namespace dexsynth::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ValidationError(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

}  // namespace

int default_workers() {
  const char* env = std::getenv(kWorkersEnv);
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw ValidationError(std::string(kWorkersEnv) + " must be a positive integer");
  return static_cast<int>(v);
}

RunConfig parse_run_config(const json& doc, const fs::path& base_dir) {
  RunConfig cfg;
  cfg.base_dir = base_dir;
  try {
    check_keys(doc, "config", {"objects", "object_points", "hand", "contact", "weights", "optimizer", "evaluation",
                               "output_dir", "workers", "seed", "write_trajectories"});
    const json& objects = doc.at("objects");
    if (objects.is_string()) {
      cfg.object_patterns = {objects.get<std::string>()};
    } else {
      cfg.object_patterns = objects.get<std::vector<std::string>>();
    }
    if (cfg.object_patterns.empty()) throw ValidationError("config lists no objects");
    read(doc, "object_points", cfg.object_points);

    const json& hand = doc.at("hand");
    check_keys(hand, "hand", {"description", "parts", "mapping"});
    cfg.hand.description = resolve(base_dir, hand.at("description").get<std::string>());
    cfg.hand.parts = resolve(base_dir, hand.at("parts").get<std::string>());
    cfg.hand.mapping = resolve(base_dir, hand.at("mapping").get<std::string>());

    if (doc.contains("contact")) {
      const json& c = doc.at("contact");
      check_keys(c, "contact", {"provider", "count", "files", "min_fingers", "max_fingers", "palm_probability",
                                "finger_spread", "approach_tilt", "d0", "d1"});
      const std::string provider = c.value("provider", "heuristic");
      if (provider == "heuristic") {
        cfg.contact.kind = ContactConfig::Kind::kHeuristic;
      } else if (provider == "file") {
        cfg.contact.kind = ContactConfig::Kind::kFile;
        for (const auto& f : c.at("files").get<std::vector<std::string>>()) cfg.contact.files.push_back(resolve(base_dir, f));
      } else {
        throw ValidationError("unknown contact provider '" + provider + "'");
      }
      read(c, "count", cfg.contact.count);
      auto& p = cfg.contact.params;
      read(c, "min_fingers", p.min_fingers);
      read(c, "max_fingers", p.max_fingers);
      read(c, "palm_probability", p.palm_probability);
      read(c, "finger_spread", p.finger_spread);
      read(c, "approach_tilt", p.approach_tilt);
      read(c, "d0", p.profile.d0);
      read(c, "d1", p.profile.d1);
    }
    if (doc.contains("weights")) {
      const json& w = doc.at("weights");
      check_keys(w, "weights", {"w_contact", "w_spf", "w_erf", "w_srf", "spf_threshold", "eta", "d_th"});
      read(w, "w_contact", cfg.weights.w_contact);
      read(w, "w_spf", cfg.weights.w_spf);
      read(w, "w_erf", cfg.weights.w_erf);
      read(w, "w_srf", cfg.weights.w_srf);
      read(w, "spf_threshold", cfg.weights.spf_threshold);
      read(w, "eta", cfg.weights.eta);
      read(w, "d_th", cfg.weights.d_th);
    }
    if (doc.contains("optimizer")) {
      const json& o = doc.at("optimizer");
      check_keys(o, "optimizer", {"iterations", "step_translation", "step_rotation", "step_joint", "n_init_poses",
                                  "init_radius", "top_k", "hand_density"});
      read(o, "iterations", cfg.optimizer.iterations);
      read(o, "step_translation", cfg.optimizer.step_translation);
      read(o, "step_rotation", cfg.optimizer.step_rotation);
      read(o, "step_joint", cfg.optimizer.step_joint);
      read(o, "n_init_poses", cfg.optimizer.n_init_poses);
      read(o, "init_radius", cfg.optimizer.init_radius);
      read(o, "top_k", cfg.optimizer.top_k);
      read(o, "hand_density", cfg.optimizer.hand_density);
    }
    if (doc.contains("evaluation")) {
      const json& e = doc.at("evaluation");
      check_keys(e, "evaluation", {"mu", "force", "f_max", "tol", "max_pen", "cone_edges", "merge_radius", "preclose",
                                   "hand_density"});
      read(e, "mu", cfg.evaluation.mu);
      read(e, "force", cfg.evaluation.force);
      read(e, "f_max", cfg.evaluation.f_max);
      read(e, "tol", cfg.evaluation.tol);
      read(e, "max_pen", cfg.evaluation.max_pen);
      read(e, "cone_edges", cfg.evaluation.cone_edges);
      read(e, "merge_radius", cfg.evaluation.merge_radius);
      read(e, "preclose", cfg.evaluation.preclose);
      read(e, "hand_density", cfg.evaluation.hand_density);
    }
    cfg.output_dir = resolve(base_dir, doc.value("output_dir", std::string("out")));
    cfg.workers = doc.contains("workers") ? doc.at("workers").get<int>() : default_workers();
    read(doc, "seed", cfg.seed);
    read(doc, "write_trajectories", cfg.write_trajectories);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (cfg.object_points < 1) throw ValidationError("object_points must be >= 1");
  if (cfg.contact.kind == ContactConfig::Kind::kHeuristic && cfg.contact.count < 1) {
    throw ValidationError("contact count must be >= 1");
  }
  if (cfg.workers < 1) throw ValidationError("workers must be >= 1");
  cfg.optimizer.workers = cfg.workers;
  cfg.optimizer.seed = cfg.seed;
  optimize::validate(cfg.weights);
  optimize::validate(cfg.optimizer);
  evaluate::validate(cfg.evaluation);
  return cfg;
}

void resolve_objects(RunConfig& cfg) {
  std::set<fs::path> found;
  for (const auto& pattern : cfg.object_patterns) {
    const std::string full = resolve(cfg.base_dir, pattern).string();
    glob_t g{};
    const int rc = ::glob(full.c_str(), 0, nullptr, &g);
    if (rc == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) found.insert(fs::path(g.gl_pathv[i]));
    }
    globfree(&g);
    if (rc != 0) throw ValidationError("object pattern matches no file: " + full);
  }
  cfg.objects.assign(found.begin(), found.end());
}

void check_files(const RunConfig& cfg) {
  auto need = [](const fs::path& p, const char* what) {
    if (!fs::is_regular_file(p)) throw ValidationError(std::string("missing ") + what + ": " + p.string());
  };
  for (const auto& o : cfg.objects) need(o, "mesh");
  need(cfg.hand.description, "hand description");
  need(cfg.hand.parts, "part-label file");
  need(cfg.hand.mapping, "mapping file");
  for (const auto& f : cfg.contact.files) need(f, "contact file");
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  RunConfig cfg = parse_run_config(doc, fs::absolute(path).parent_path());
  resolve_objects(cfg);
  check_files(cfg);
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json objects = json::array();
  for (const auto& o : cfg.objects) objects.push_back(o.string());
  json files = json::array();
  for (const auto& f : cfg.contact.files) files.push_back(f.string());
  const auto& p = cfg.contact.params;
  return {
      {"objects", cfg.object_patterns},
      {"resolved_objects", objects},
      {"object_points", cfg.object_points},
      {"hand",
       {{"description", cfg.hand.description.string()},
        {"parts", cfg.hand.parts.string()},
        {"mapping", cfg.hand.mapping.string()}}},
      {"contact",
       {{"provider", cfg.contact.kind == ContactConfig::Kind::kHeuristic ? "heuristic" : "file"},
        {"count", cfg.contact.count},
        {"files", files},
        {"min_fingers", p.min_fingers},
        {"max_fingers", p.max_fingers},
        {"palm_probability", p.palm_probability},
        {"finger_spread", p.finger_spread},
        {"approach_tilt", p.approach_tilt},
        {"d0", p.profile.d0},
        {"d1", p.profile.d1}}},
      {"weights",
       {{"w_contact", cfg.weights.w_contact},
        {"w_spf", cfg.weights.w_spf},
        {"w_erf", cfg.weights.w_erf},
        {"w_srf", cfg.weights.w_srf},
        {"spf_threshold", cfg.weights.spf_threshold},
        {"eta", cfg.weights.eta},
        {"d_th", cfg.weights.d_th}}},
      {"optimizer",
       {{"iterations", cfg.optimizer.iterations},
        {"step_translation", cfg.optimizer.step_translation},
        {"step_rotation", cfg.optimizer.step_rotation},
        {"step_joint", cfg.optimizer.step_joint},
        {"n_init_poses", cfg.optimizer.n_init_poses},
        {"init_radius", cfg.optimizer.init_radius},
        {"top_k", cfg.optimizer.top_k},
        {"hand_density", cfg.optimizer.hand_density}}},
      {"evaluation",
       {{"mu", cfg.evaluation.mu},
        {"force", cfg.evaluation.force},
        {"f_max", cfg.evaluation.f_max},
        {"tol", cfg.evaluation.tol},
        {"max_pen", cfg.evaluation.max_pen},
        {"cone_edges", cfg.evaluation.cone_edges},
        {"merge_radius", cfg.evaluation.merge_radius},
        {"preclose", cfg.evaluation.preclose},
        {"hand_density", cfg.evaluation.hand_density}}},
      {"output_dir", cfg.output_dir.string()},
      {"workers", cfg.workers},
      {"seed", cfg.seed},
      {"write_trajectories", cfg.write_trajectories},
  };
}

}  // namespace dexsynth::pipeline
