"""Regenerates the mesh fixtures under tests/data.

genus2.off is two tori of radii (1, 0.4) joined by a smooth minimum of
their distance fields, triangulated with marching cubes and projected back
onto the level set.
"""
import sys
from pathlib import Path

import numpy as np
from skimage import measure


def write_off(path, verts, faces):
    with open(path, "w") as f:
        f.write("OFF\n%d %d 0\n" % (len(verts), len(faces)))
        for v in verts:
            f.write("%.12g %.12g %.12g\n" % tuple(v))
        for t in faces:
            f.write("3 %d %d %d\n" % tuple(t))


def genus2_field(p, R=1.0, r=0.4, k=0.15, cx=1.1):
    """Smooth minimum of two torus distance fields centred at x = +-cx."""
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    d = [np.sqrt((np.sqrt((x - c) ** 2 + y**2) - R) ** 2 + z**2) - r for c in (-cx, cx)]
    return -k * np.logaddexp(-d[0] / k, -d[1] / k)


def genus2(step):
    xs = np.arange(-2.8, 2.8 + step, step)
    ys = np.arange(-1.8, 1.8 + step, step)
    zs = np.arange(-0.8, 0.8 + step, step)
    grid = np.stack(np.meshgrid(xs, ys, zs, indexing="ij"), -1)
    verts, faces, _, _ = measure.marching_cubes(genus2_field(grid), 0.0, spacing=(step, step, step))
    verts += np.array([xs[0], ys[0], zs[0]])
    # Newton-project onto the level set; marching cubes only interpolates linearly.
    h = 1e-7
    for _ in range(10):
        g = np.stack([(genus2_field(verts + h * e) - genus2_field(verts - h * e)) / (2 * h) for e in np.eye(3)], -1)
        verts = verts - (genus2_field(verts) / np.sum(g * g, -1))[:, None] * g
    return verts, faces


def icosahedron():
    p = (1 + 5**0.5) / 2
    verts = np.array([[-1, p, 0], [1, p, 0], [-1, -p, 0], [1, -p, 0],
                      [0, -1, p], [0, 1, p], [0, -1, -p], [0, 1, -p],
                      [p, 0, -1], [p, 0, 1], [-p, 0, -1], [-p, 0, 1]], dtype=float)
    faces = [[0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
             [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
             [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
             [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1]]
    return verts, np.array(faces)


def torus_obj(path, R, r, nv, nu):
    with open(path, "w") as f:
        f.write("# torus R=%g r=%g, %dx%d grid\n" % (R, r, nv, nu))
        for i in range(nv):
            v = 2 * np.pi * i / nv
            for j in range(nu):
                u = 2 * np.pi * j / nu
                rho = R + r * np.cos(u)
                f.write("v %.12g %.12g %.12g\n" % (rho * np.cos(v), rho * np.sin(v), r * np.sin(u)))
        idx = lambda i, j: (i % nv) * nu + (j % nu) + 1
        for i in range(nv):
            for j in range(nu):
                f.write("f %d %d %d\n" % (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)))
                f.write("f %d/1 %d/1 %d/1\n" % (idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)))


def main(out_dir):
    out = Path(out_dir)
    v, f = icosahedron()
    write_off(out / "icosahedron.off", v, f)
    write_off(out / "icosahedron_open.off", v, f[:-1])
    # Two tetrahedra glued along one edge: that edge carries four faces.
    tv = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, -1], [1, 1, -1]], dtype=float)
    tf = [[0, 2, 1], [0, 1, 3], [1, 2, 3], [2, 0, 3],
          [0, 1, 4], [1, 0, 5], [0, 4, 5], [1, 5, 4]]
    write_off(out / "nonmanifold.off", tv, tf)
    torus_obj(out / "torus.obj", 2.0, 1.0, 48, 24)
    v, f = genus2(0.05)
    write_off(out / "genus2.off", v, f)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parents[2] / "tests" / "data")
