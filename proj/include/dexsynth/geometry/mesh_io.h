#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dexsynth/geometry/point_cloud.h"
#include "dexsynth/geometry/triangle_mesh.h"

namespace dexsynth::geometry {

/// Non-fatal findings collected while loading a mesh.
struct MeshLoadReport {
  int degenerate_removed = 0;
  bool closed = true;
  std::vector<std::string> warnings;
};

/// Loads an OBJ or PLY file (chosen by extension, case-insensitive).
/// Polygons are fan-triangulated, degenerate faces removed and vertex
/// normals computed when the file has none. Throws ParseError.
TriangleMesh load_mesh(const std::filesystem::path& path, MeshLoadReport* report = nullptr);

TriangleMesh read_obj(std::istream& in, MeshLoadReport* report = nullptr);
TriangleMesh read_ply(std::istream& in, MeshLoadReport* report = nullptr);

enum class PlyEncoding { kAscii, kBinaryLittleEndian };

void write_obj(std::ostream& out, const TriangleMesh& mesh);
void write_ply(std::ostream& out, const TriangleMesh& mesh,
               PlyEncoding encoding = PlyEncoding::kAscii);

using Rgb = std::array<std::uint8_t, 3>;

/// Point-only PLY (ascii) with normals and optional per-vertex colors.
void write_point_ply(std::ostream& out, const PointCloud& cloud,
                     const std::vector<Rgb>* colors = nullptr);
PointCloud read_point_ply(std::istream& in);

}  // namespace dexsynth::geometry
