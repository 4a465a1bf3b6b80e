#pragma once

#include "dexsynth/geometry/triangle_mesh.h"

namespace dexsynth::geometry {

// Closed, outward-wound tessellations centered at the origin. Cylinders and
// capsules run along z.

TriangleMesh make_box(const Vec3& size);
TriangleMesh make_icosphere(double radius, int subdivisions);
TriangleMesh make_uv_sphere(double radius, int slices, int stacks);
TriangleMesh make_cylinder(double radius, double length, int slices = 24);
TriangleMesh make_capsule(double radius, double length, int slices = 24, int cap_stacks = 6);

}  // namespace dexsynth::geometry
