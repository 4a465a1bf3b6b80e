#include "dexsynth/pipeline/records.h"

#include <chrono>
#include <ctime>
#include <fstream>

#include "dexsynth/common/error.h"

namespace dexsynth::pipeline {

using nlohmann::json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json to_json(const evaluate::StabilityReport& s) {
  json dirs = json::object();
  for (int d = 0; d < 6; ++d) dirs[evaluate::kDirectionNames[d]] = s.directions[d];
  return {{"directions", dirs},
          {"penetration_ok", s.penetration_ok},
          {"success", s.success},
          {"max_penetration", s.max_penetration},
          {"contact_count", s.contact_count}};
}

evaluate::StabilityReport stability_from_json(const json& j) {
  evaluate::StabilityReport s;
  for (int d = 0; d < 6; ++d) s.directions[d] = j.at("directions").at(evaluate::kDirectionNames[d]).get<bool>();
  s.penetration_ok = j.at("penetration_ok").get<bool>();
  s.success = j.at("success").get<bool>();
  s.max_penetration = j.at("max_penetration").get<double>();
  s.contact_count = j.at("contact_count").get<int>();
  return s;
}

json to_json(const GraspRecord& r) {
  const auto& q = r.pose.rotation;
  return {
      {"record_id", r.record_id},
      {"object",
       {{"id", r.object_id},
        {"path", r.object_path},
        {"hash", r.object_hash},
        {"cloud", r.object_cloud},
        {"points", r.object_points}}},
      {"hand",
       {{"name", r.hand_name},
        {"description", r.hand_description},
        {"parts", r.hand_parts},
        {"mapping", r.hand_mapping}}},
      {"contact",
       {{"provider", r.contact_provider},
        {"seed", r.contact_seed},
        {"source", r.contact_source},
        {"index", r.contact_index},
        {"human_file", r.human_contact_file},
        {"robot_file", r.robot_contact_file}}},
      {"init_id", r.init_id},
      {"rank", r.rank},
      {"pose",
       {{"translation", {r.pose.translation.x(), r.pose.translation.y(), r.pose.translation.z()}},
        {"rotation_wxyz", {q.w(), q.x(), q.y(), q.z()}},
        {"q", std::vector<double>(r.pose.q.data(), r.pose.q.data() + r.pose.q.size())}}},
      {"energy", r.energy},
      {"terms", {{"contact", r.terms.contact}, {"spf", r.terms.spf}, {"erf", r.terms.erf}, {"srf", r.terms.srf}}},
      {"stability", to_json(r.stability)},
      {"tool_version", r.tool_version},
      {"timestamp", r.timestamp},
  };
}

GraspRecord record_from_json(const json& j) {
  GraspRecord r;
  try {
    r.record_id = j.at("record_id").get<std::string>();
    const json& o = j.at("object");
    r.object_id = o.at("id").get<std::string>();
    r.object_path = o.at("path").get<std::string>();
    r.object_hash = o.at("hash").get<std::string>();
    r.object_cloud = o.at("cloud").get<std::string>();
    r.object_points = o.at("points").get<int>();
    const json& h = j.at("hand");
    r.hand_name = h.at("name").get<std::string>();
    r.hand_description = h.at("description").get<std::string>();
    r.hand_parts = h.at("parts").get<std::string>();
    r.hand_mapping = h.at("mapping").get<std::string>();
    const json& c = j.at("contact");
    r.contact_provider = c.at("provider").get<std::string>();
    r.contact_seed = c.at("seed").get<std::uint64_t>();
    r.contact_source = c.at("source").get<std::string>();
    r.contact_index = c.at("index").get<int>();
    r.human_contact_file = c.at("human_file").get<std::string>();
    r.robot_contact_file = c.at("robot_file").get<std::string>();
    r.init_id = j.at("init_id").get<int>();
    r.rank = j.at("rank").get<int>();
    const json& p = j.at("pose");
    const auto t = p.at("translation").get<std::vector<double>>();
    const auto rot = p.at("rotation_wxyz").get<std::vector<double>>();
    const auto q = p.at("q").get<std::vector<double>>();
    if (t.size() != 3 || rot.size() != 4) throw ParseError("record pose has wrong dimensions");
    r.pose.translation = Vec3(t[0], t[1], t[2]);
    r.pose.rotation = Eigen::Quaterniond(rot[0], rot[1], rot[2], rot[3]);
    r.pose.q = Eigen::Map<const Eigen::VectorXd>(q.data(), static_cast<Eigen::Index>(q.size()));
    r.energy = j.at("energy").get<double>();
    const json& terms = j.at("terms");
    r.terms = {terms.at("contact").get<double>(), terms.at("spf").get<double>(), terms.at("erf").get<double>(),
               terms.at("srf").get<double>()};
    r.stability = stability_from_json(j.at("stability"));
    r.tool_version = j.at("tool_version").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("grasp record: ") + e.what());
  }
  return r;
}

void write_records(const std::filesystem::path& path, const std::vector<GraspRecord>& records) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  for (const auto& r : records) out << to_json(r).dump() << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<GraspRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open records " + path.string());
  std::vector<GraspRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace dexsynth::pipeline
