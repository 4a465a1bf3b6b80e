#pragma once

#include <cstddef>
#include <vector>

#include "dexsynth/common/rng.h"
#include "dexsynth/geometry/triangle_mesh.h"
#include "dexsynth/kinematics/hand_model.h"

namespace dexsynth::kinematics {

struct ShapeDistance {
  double distance = 0.0;
  Vec3 gradient = Vec3::UnitZ();  // unit, in the shape frame
};

/// Signed distance from a point in the shape frame; negative inside.
ShapeDistance shape_distance(const Shape& shape, const Vec3& p);

double shape_surface_area(const Shape& shape);

/// Appends n uniform-by-area surface points (shape frame).
void sample_shape_surface(const Shape& shape, std::size_t n, Rng& rng, std::vector<Vec3>& out);

/// Closed triangle mesh of the shape, in the shape frame.
geometry::TriangleMesh tessellate(const Shape& shape);

}  // namespace dexsynth::kinematics
