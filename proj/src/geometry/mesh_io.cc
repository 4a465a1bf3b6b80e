#include "dexsynth/geometry/mesh_io.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>

#include "dexsynth/common/error.h"

namespace dexsynth::geometry {

static_assert(std::endian::native == std::endian::little,
              "binary PLY support assumes a little-endian host");

namespace {

void finish(TriangleMesh& mesh, MeshLoadReport* report) {
  validate(mesh);
  MeshLoadReport local;
  MeshLoadReport& r = report ? *report : local;
  r.degenerate_removed = remove_degenerate_triangles(mesh);
  if (mesh.normals.size() != mesh.vertices.size()) compute_vertex_normals(mesh);
  r.closed = is_closed(mesh);
  if (r.degenerate_removed > 0) {
    r.warnings.push_back("removed " + std::to_string(r.degenerate_removed) + " degenerate triangles");
  }
  if (!r.closed) r.warnings.push_back("mesh is not closed (non-manifold or open edges)");
}

void fan_triangulate(const std::vector<int>& poly, std::vector<Triangle>& out) {
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) out.push_back({poly[0], poly[k], poly[k + 1]});
}

int resolve_obj_index(long idx, std::size_t count, int line) {
  long resolved = idx > 0 ? idx - 1 : static_cast<long>(count) + idx;
  if (idx == 0 || resolved < 0 || resolved >= static_cast<long>(count)) {
    throw ParseError("OBJ line " + std::to_string(line) + ": face index out of range (" +
                     std::to_string(idx) + ", " + std::to_string(count) + " available)");
  }
  return static_cast<int>(resolved);
}

}  // namespace

TriangleMesh read_obj(std::istream& in, MeshLoadReport* report) {
  TriangleMesh mesh;
  std::vector<Vec3> file_normals;
  std::vector<int> normal_ref;  // per vertex, -1 when unassigned
  std::string line;
  int line_no = 0;
  std::vector<int> poly;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 v;
      if (!(ss >> v.x() >> v.y() >> v.z())) {
        throw ParseError("OBJ line " + std::to_string(line_no) + ": bad vertex");
      }
      mesh.vertices.push_back(v);
      normal_ref.push_back(-1);
    } else if (tag == "vn") {
      Vec3 n;
      if (!(ss >> n.x() >> n.y() >> n.z())) {
        throw ParseError("OBJ line " + std::to_string(line_no) + ": bad normal");
      }
      file_normals.push_back(n);
    } else if (tag == "f") {
      poly.clear();
      std::string corner;
      while (ss >> corner) {
        // v, v/vt, v/vt/vn or v//vn
        const auto slash = corner.find('/');
        const int v = resolve_obj_index(std::stol(corner.substr(0, slash)), mesh.vertices.size(), line_no);
        if (slash != std::string::npos) {
          const auto slash2 = corner.find('/', slash + 1);
          if (slash2 != std::string::npos && slash2 + 1 < corner.size()) {
            const int n = resolve_obj_index(std::stol(corner.substr(slash2 + 1)), file_normals.size(), line_no);
            if (normal_ref[v] < 0) normal_ref[v] = n;
          }
        }
        poly.push_back(v);
      }
      if (poly.size() < 3) {
        throw ParseError("OBJ line " + std::to_string(line_no) + ": face with fewer than 3 vertices");
      }
      fan_triangulate(poly, mesh.triangles);
    } else if (tag == "vt" || tag == "vp" || tag == "o" || tag == "g" || tag == "s" ||
               tag == "usemtl" || tag == "mtllib" || tag == "l" || tag == "p") {
      continue;
    } else {
      throw ParseError("OBJ line " + std::to_string(line_no) + ": unsupported record '" + tag + "'");
    }
  }
  const bool all_normals = !mesh.vertices.empty() &&
                           std::all_of(normal_ref.begin(), normal_ref.end(), [](int r) { return r >= 0; });
  if (all_normals) {
    mesh.normals.reserve(mesh.vertices.size());
    for (int r : normal_ref) mesh.normals.push_back(file_normals[r].normalized());
  }
  finish(mesh, report);
  return mesh;
}

namespace {

enum class PlyType { kInt8, kUint8, kInt16, kUint16, kInt32, kUint32, kFloat32, kFloat64 };

PlyType parse_ply_type(const std::string& s) {
  if (s == "char" || s == "int8") return PlyType::kInt8;
  if (s == "uchar" || s == "uint8") return PlyType::kUint8;
  if (s == "short" || s == "int16") return PlyType::kInt16;
  if (s == "ushort" || s == "uint16") return PlyType::kUint16;
  if (s == "int" || s == "int32") return PlyType::kInt32;
  if (s == "uint" || s == "uint32") return PlyType::kUint32;
  if (s == "float" || s == "float32") return PlyType::kFloat32;
  if (s == "double" || s == "float64") return PlyType::kFloat64;
  throw ParseError("PLY: unknown property type '" + s + "'");
}

struct PlyProperty {
  std::string name;
  PlyType type = PlyType::kFloat32;
  bool is_list = false;
  PlyType count_type = PlyType::kUint8;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

template <typename T>
T read_raw(std::istream& in) {
  T value;
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw ParseError("PLY: unexpected end of binary data");
  return value;
}

double read_binary(std::istream& in, PlyType type) {
  switch (type) {
    case PlyType::kInt8: return read_raw<std::int8_t>(in);
    case PlyType::kUint8: return read_raw<std::uint8_t>(in);
    case PlyType::kInt16: return read_raw<std::int16_t>(in);
    case PlyType::kUint16: return read_raw<std::uint16_t>(in);
    case PlyType::kInt32: return read_raw<std::int32_t>(in);
    case PlyType::kUint32: return read_raw<std::uint32_t>(in);
    case PlyType::kFloat32: return read_raw<float>(in);
    case PlyType::kFloat64: return read_raw<double>(in);
  }
  return 0.0;
}

// Reads one scalar either from the ascii token stream or the binary stream.
class PlyReader {
 public:
  PlyReader(std::istream& in, bool binary) : in_(in), binary_(binary) {}

  void begin_record() {
    if (!binary_) next_line();
  }

  double scalar(PlyType type) {
    if (binary_) return read_binary(in_, type);
    double v;
    if (!(tokens_ >> v)) throw ParseError("PLY: malformed ascii data");
    return v;
  }

 private:
  void next_line() {
    std::string line;
    do {
      if (!std::getline(in_, line)) throw ParseError("PLY: unexpected end of ascii data");
    } while (line.find_first_not_of(" \t\r") == std::string::npos);
    tokens_.clear();
    tokens_.str(line);
  }

  std::istream& in_;
  bool binary_;
  std::istringstream tokens_;
};

}  // namespace

namespace {

struct PlyData {
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;
  bool has_normals = false;
  std::vector<std::vector<int>> faces;
};

PlyData read_ply_data(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.substr(0, 3) != "ply") throw ParseError("PLY: missing magic");
  bool binary = false;
  std::vector<PlyElement> elements;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("PLY: header not terminated");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "end_header") break;
    if (tag == "format") {
      std::string fmt, version;
      ss >> fmt >> version;
      if (fmt == "ascii") {
        binary = false;
      } else if (fmt == "binary_little_endian") {
        binary = true;
      } else {
        throw ParseError("PLY: unsupported format '" + fmt + "'");
      }
    } else if (tag == "element") {
      PlyElement e;
      ss >> e.name >> e.count;
      elements.push_back(e);
    } else if (tag == "property") {
      if (elements.empty()) throw ParseError("PLY: property before element");
      PlyProperty p;
      std::string type;
      ss >> type;
      if (type == "list") {
        std::string count_type, item_type;
        ss >> count_type >> item_type >> p.name;
        p.is_list = true;
        p.count_type = parse_ply_type(count_type);
        p.type = parse_ply_type(item_type);
      } else {
        p.type = parse_ply_type(type);
        ss >> p.name;
      }
      elements.back().properties.push_back(p);
    } else if (tag == "comment" || tag == "obj_info" || tag.empty()) {
      continue;
    } else {
      throw ParseError("PLY: unsupported header record '" + tag + "'");
    }
  }

  PlyData data;
  PlyReader reader(in, binary);
  for (const PlyElement& e : elements) {
    const bool is_vertex = e.name == "vertex";
    const bool is_face = e.name == "face";
    if (is_vertex) {
      data.has_normals = std::any_of(e.properties.begin(), e.properties.end(),
                                     [](const PlyProperty& p) { return p.name == "nx"; });
    }
    for (std::size_t i = 0; i < e.count; ++i) {
      Vec3 pos = Vec3::Zero(), nrm = Vec3::Zero();
      reader.begin_record();
      for (const PlyProperty& p : e.properties) {
        if (p.is_list) {
          const auto n = static_cast<std::size_t>(reader.scalar(p.count_type));
          std::vector<int> idx(n);
          for (std::size_t k = 0; k < n; ++k) idx[k] = static_cast<int>(reader.scalar(p.type));
          if (is_face && (p.name == "vertex_indices" || p.name == "vertex_index")) {
            data.faces.push_back(std::move(idx));
          }
          continue;
        }
        const double v = reader.scalar(p.type);
        if (!is_vertex) continue;
        if (p.name == "x") pos.x() = v;
        else if (p.name == "y") pos.y() = v;
        else if (p.name == "z") pos.z() = v;
        else if (p.name == "nx") nrm.x() = v;
        else if (p.name == "ny") nrm.y() = v;
        else if (p.name == "nz") nrm.z() = v;
      }
      if (is_vertex) {
        data.positions.push_back(pos);
        data.normals.push_back(nrm);
      }
    }
  }
  return data;
}

}  // namespace

TriangleMesh read_ply(std::istream& in, MeshLoadReport* report) {
  PlyData data = read_ply_data(in);
  TriangleMesh mesh;
  mesh.vertices = std::move(data.positions);
  for (const auto& poly : data.faces) {
    if (poly.size() < 3) throw ParseError("PLY: face with fewer than 3 vertices");
    for (int idx : poly) {
      if (idx < 0 || idx >= static_cast<int>(mesh.vertices.size())) {
        throw ParseError("PLY: face index out of range (" + std::to_string(idx) + ")");
      }
    }
    fan_triangulate(poly, mesh.triangles);
  }
  if (data.has_normals) {
    mesh.normals = std::move(data.normals);
    for (Vec3& n : mesh.normals) {
      if (n.norm() > 0.0) n.normalize();
    }
  }
  finish(mesh, report);
  return mesh;
}

PointCloud read_point_ply(std::istream& in) {
  PlyData data = read_ply_data(in);
  PointCloud cloud;
  cloud.points = std::move(data.positions);
  if (data.has_normals) cloud.normals = std::move(data.normals);
  return cloud;
}

TriangleMesh load_mesh(const std::filesystem::path& path, MeshLoadReport* report) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open mesh file " + path.string());
  try {
    if (ext == ".obj") return read_obj(in, report);
    if (ext == ".ply") return read_ply(in, report);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  throw ParseError("unsupported mesh extension '" + ext + "' for " + path.string());
}

void write_obj(std::ostream& out, const TriangleMesh& mesh) {
  out << std::setprecision(17);
  for (const Vec3& v : mesh.vertices) out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  const bool normals = mesh.normals.size() == mesh.vertices.size() && !mesh.normals.empty();
  if (normals) {
    for (const Vec3& n : mesh.normals) out << "vn " << n.x() << ' ' << n.y() << ' ' << n.z() << '\n';
  }
  for (const Triangle& t : mesh.triangles) {
    out << 'f';
    for (int idx : t) {
      out << ' ' << idx + 1;
      if (normals) out << "//" << idx + 1;
    }
    out << '\n';
  }
}

namespace {

template <typename T>
void write_raw(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

}  // namespace

void write_ply(std::ostream& out, const TriangleMesh& mesh, PlyEncoding encoding) {
  const bool binary = encoding == PlyEncoding::kBinaryLittleEndian;
  const bool normals = mesh.normals.size() == mesh.vertices.size() && !mesh.normals.empty();
  out << "ply\nformat " << (binary ? "binary_little_endian" : "ascii") << " 1.0\n"
      << "element vertex " << mesh.vertices.size() << '\n'
      << "property double x\nproperty double y\nproperty double z\n";
  if (normals) out << "property double nx\nproperty double ny\nproperty double nz\n";
  out << "element face " << mesh.triangles.size() << '\n'
      << "property list uchar int vertex_indices\nend_header\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& v = mesh.vertices[i];
    if (binary) {
      for (int k = 0; k < 3; ++k) write_raw(out, v[k]);
      if (normals) {
        for (int k = 0; k < 3; ++k) write_raw(out, mesh.normals[i][k]);
      }
    } else {
      out << v.x() << ' ' << v.y() << ' ' << v.z();
      if (normals) out << ' ' << mesh.normals[i].x() << ' ' << mesh.normals[i].y() << ' ' << mesh.normals[i].z();
      out << '\n';
    }
  }
  for (const Triangle& t : mesh.triangles) {
    if (binary) {
      write_raw<std::uint8_t>(out, 3);
      for (int idx : t) write_raw<std::int32_t>(out, idx);
    } else {
      out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
  }
}

void write_point_ply(std::ostream& out, const PointCloud& cloud, const std::vector<Rgb>* colors) {
  const bool normals = cloud.normals.size() == cloud.points.size() && !cloud.normals.empty();
  out << "ply\nformat ascii 1.0\nelement vertex " << cloud.points.size() << '\n'
      << "property double x\nproperty double y\nproperty double z\n";
  if (normals) out << "property double nx\nproperty double ny\nproperty double nz\n";
  if (colors) out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "end_header\n" << std::setprecision(17);
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const Vec3& p = cloud.points[i];
    out << p.x() << ' ' << p.y() << ' ' << p.z();
    if (normals) out << ' ' << cloud.normals[i].x() << ' ' << cloud.normals[i].y() << ' ' << cloud.normals[i].z();
    if (colors) {
      const Rgb& c = (*colors)[i];
      out << ' ' << int(c[0]) << ' ' << int(c[1]) << ' ' << int(c[2]);
    }
    out << '\n';
  }
}

}  // namespace dexsynth::geometry
