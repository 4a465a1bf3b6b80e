#!/usr/bin/env python3
"""Regenerates the fixture hands, mappings and object meshes under data/.

Hands are primitive-geometry grippers: a box palm whose top face is the
z = 0 plane (palm axis +z) and capsule fingers pointing +z that flex
toward the palm center. The opposing "thumb" sits on the -y edge.
"""
import json
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))

PROX_LEN, DIST_LEN, RADIUS = 0.03, 0.02, 0.01  # capsule segment lengths
FINGER_Y = 0.065                               # finger base offset from the palm center
PROX_JOINT = PROX_LEN + RADIUS                 # distal joint height on the proximal link


def fmt(v):
    return " ".join(f"{x:g}" for x in v)


def finger(name, base, flex_axis, spread, palm_link):
    parent = palm_link
    out = []
    if spread:
        out.append(f'  <link name="{name}_base"/>')
        out.append(f'  <joint name="{name}_spread" type="revolute">\n'
                   f'    <parent link="{parent}"/><child link="{name}_base"/>\n'
                   f'    <origin xyz="{fmt(base)}"/><axis xyz="0 0 1"/>\n'
                   f'    <limit lower="-0.35" upper="0.35" effort="1" velocity="1"/>\n'
                   f'  </joint>')
        parent, origin = f"{name}_base", (0, 0, 0)
    else:
        origin = base
    out.append(f'  <link name="{name}_proximal">\n'
               f'    <collision><origin xyz="0 0 {PROX_LEN / 2 + RADIUS:g}"/>'
               f'<geometry><capsule radius="{RADIUS:g}" length="{PROX_LEN:g}"/></geometry></collision>\n'
               f'  </link>')
    out.append(f'  <joint name="{name}_flex1" type="revolute">\n'
               f'    <parent link="{parent}"/><child link="{name}_proximal"/>\n'
               f'    <origin xyz="{fmt(origin)}"/><axis xyz="{fmt(flex_axis)}"/>\n'
               f'    <limit lower="-0.6" upper="0.6" effort="1" velocity="1"/>\n'
               f'  </joint>')
    out.append(f'  <link name="{name}_distal">\n'
               f'    <collision><origin xyz="0 0 {DIST_LEN / 2 + RADIUS:g}"/>'
               f'<geometry><capsule radius="{RADIUS:g}" length="{DIST_LEN:g}"/></geometry></collision>\n'
               f'  </link>')
    out.append(f'  <joint name="{name}_flex2" type="revolute">\n'
               f'    <parent link="{name}_proximal"/><child link="{name}_distal"/>\n'
               f'    <origin xyz="0 0 {PROX_JOINT:g}"/><axis xyz="{fmt(flex_axis)}"/>\n'
               f'    <limit lower="-0.5" upper="0.9" effort="1" velocity="1"/>\n'
               f'  </joint>')
    return out, [f"{name}_proximal", f"{name}_distal"]


def hand(name, finger_xs, palm_mesh=False):
    """finger_xs: x offsets of the fingers on the +y edge; the thumb is on -y."""
    palm = ('<mesh filename="palm.obj"/>' if palm_mesh else '<box size="0.1 0.14 0.02"/>')
    lines = [f'<?xml version="1.0"?>', f'<robot name="{name}">',
             f'  <link name="palm">\n'
             f'    <visual><origin xyz="0 0 -0.01"/><geometry><box size="0.1 0.14 0.02"/></geometry></visual>\n'
             f'    <collision><origin xyz="0 0 -0.01"/><geometry>{palm}</geometry></collision>\n'
             f'  </link>']
    links = {"palm": 1}
    names = {"1": "palm"}
    thumb, tl = finger("thumb", (0, -FINGER_Y, 0), (-1, 0, 0), False, "palm")
    lines += thumb
    for l in tl:
        links[l] = 2
    names["2"] = "thumb"
    for i, x in enumerate(finger_xs):
        f = f"finger{i + 1}"
        block, fl = finger(f, (x, FINGER_Y, 0), (1, 0, 0), True, "palm")
        lines += block
        for l in fl:
            links[l] = 3 + i
        names[str(3 + i)] = f
    lines.append("</robot>")
    parts = {"robot_name": name, "num_parts": 2 + len(finger_xs), "part_names": names, "links": links,
             "palm_axis": [0, 0, 1]}
    return "\n".join(lines) + "\n", parts


def box_obj(size):
    hx, hy, hz = (s / 2 for s in size)
    v = [(x, y, z) for x in (-hx, hx) for y in (-hy, hy) for z in (-hz, hz)]
    quads = [(0, 1, 3, 2), (4, 6, 7, 5), (0, 4, 5, 1), (2, 3, 7, 6), (0, 2, 6, 4), (1, 5, 7, 3)]
    out = [f"v {x:.9g} {y:.9g} {z:.9g}" for x, y, z in v]
    for a, b, c, d in quads:
        out.append(f"f {a + 1} {b + 1} {c + 1}")
        out.append(f"f {a + 1} {c + 1} {d + 1}")
    return "\n".join(out) + "\n"


def icosphere(radius, subdiv):
    t = (1 + 5 ** 0.5) / 2
    verts = [(-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0), (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
             (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1)]
    faces = [(0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11), (1, 5, 9), (5, 11, 4), (11, 10, 2),
             (10, 7, 6), (7, 1, 8), (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9), (4, 9, 5), (2, 4, 11),
             (6, 2, 10), (8, 6, 7), (9, 8, 1)]
    verts = [tuple(c / math.sqrt(sum(x * x for x in v)) for c in v) for v in verts]
    for _ in range(subdiv):
        cache, nf = {}, []

        def mid(a, b):
            key = (min(a, b), max(a, b))
            if key not in cache:
                m = [(verts[a][i] + verts[b][i]) / 2 for i in range(3)]
                n = math.sqrt(sum(x * x for x in m))
                verts.append(tuple(x / n for x in m))
                cache[key] = len(verts) - 1
            return cache[key]

        for a, b, c in faces:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            nf += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = nf
    out = [f"v {radius * x:.9g} {radius * y:.9g} {radius * z:.9g}" for x, y, z in verts]
    out += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in faces]
    return "\n".join(out) + "\n"


def tetra_ply():
    v = [(0.03, 0.03, 0.03), (-0.03, -0.03, 0.03), (-0.03, 0.03, -0.03), (0.03, -0.03, -0.03)]
    f = [(0, 1, 3), (0, 2, 1), (0, 3, 2), (1, 2, 3)]
    head = ["ply", "format ascii 1.0", "comment regular tetrahedron, edge 8.5 cm",
            f"element vertex {len(v)}", "property float x", "property float y", "property float z",
            f"element face {len(f)}", "property list uchar int vertex_indices", "end_header"]
    return "\n".join(head + [f"{x:g} {y:g} {z:g}" for x, y, z in v] + [f"3 {a} {b} {c}" for a, b, c in f]) + "\n"


def write(path, text):
    with open(os.path.join(HERE, path), "w") as fh:
        fh.write(text)


def main():
    specs = {"tri_finger": ([0.025, -0.025], False),
             "quad_finger": ([0.03, 0.0, -0.03], False),
             "penta_finger": ([0.036, 0.012, -0.012, -0.036], True)}
    for name, (xs, mesh) in specs.items():
        urdf, parts = hand(name, xs, mesh)
        write(f"hands/{name}.urdf", urdf)
        write(f"hands/{name}.parts.json", json.dumps(parts, indent=2) + "\n")
    write("hands/palm.obj", box_obj((0.1, 0.14, 0.02)))
    write("objects/sphere_r50.obj", icosphere(0.05, 3))
    write("objects/cube_60.obj", box_obj((0.06, 0.06, 0.06)))
    write("objects/tetrahedron.ply", tetra_ply())


if __name__ == "__main__":
    main()
