"""Triangle meshes of implicit, graph and parametric surfaces, plus OBJ / PLY output."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
from skimage.measure import marching_cubes

from .core import Box, ContractViolation, ScalarField, TriangleMesh

log = logging.getLogger(__name__)

_SLAB = 1 << 18
_BISECTIONS = 52


@dataclass(frozen=True)
class GridSpec:
    bounds: Box
    resolution: tuple[int, int, int] = (128, 128, 128)
    iso_tol: float = 1e-6

    def __post_init__(self):
        res = self.resolution
        if isinstance(res, int):
            res = (res, res, res)
        res = tuple(int(r) for r in res)
        if len(res) != 3 or min(res) < 8:
            raise ContractViolation(f"resolution must be at least 8 per axis, got {res}")
        if not self.iso_tol > 0:
            raise ContractViolation("iso_tol must be positive")
        object.__setattr__(self, "resolution", res)

    @property
    def spacing(self) -> np.ndarray:
        return (self.bounds.hi - self.bounds.lo) / np.array(self.resolution)

    def axes(self) -> list[np.ndarray]:
        lo, hi = self.bounds.lo, self.bounds.hi
        return [np.linspace(lo[i], hi[i], self.resolution[i] + 1) for i in range(3)]

    def to_world(self, ijk) -> np.ndarray:
        return self.bounds.lo + np.asarray(ijk, dtype=float) * self.spacing


def _chunked(fn, pts: np.ndarray) -> np.ndarray:
    flat = pts.reshape(-1, 3)
    out = [np.asarray(fn(flat[i : i + _SLAB])) for i in range(0, len(flat), _SLAB)]
    return np.concatenate(out).reshape(pts.shape[:-1]) if out else np.zeros(pts.shape[:-1])


def sample(field: ScalarField, grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Field values and validity on the grid nodes, evaluated slab by slab."""
    X, Y, Z = np.meshgrid(*grid.axes(), indexing="ij")
    pts = np.stack([X, Y, Z], axis=-1)
    valid = _chunked(lambda p: field.valid(p), pts).astype(bool)
    with np.errstate(all="ignore"):
        values = _chunked(lambda p: field(p), pts).astype(float)
    valid &= np.isfinite(values)
    return values, valid


def _empty(name: str, reason: str) -> TriangleMesh:
    mesh = TriangleMesh.empty(name)
    mesh.warnings.append(reason)
    log.warning("%s: %s", name or "mesh", reason)
    return mesh


def _compact(vertices, faces, residuals):
    used = np.unique(faces)
    remap = np.full(len(vertices), -1, dtype=np.int64)
    remap[used] = np.arange(len(used))
    return vertices[used], remap[faces], residuals[used]


def vertex_edges(verts_ijk: np.ndarray, filled: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Grid edge (two node indices) carrying each marching-cubes vertex.

    A vertex has one non-integer index coordinate, which names its edge. The
    float32 output can round a vertex onto a node; the edge is then the one
    towards the neighbour of opposite sign with the largest value, which is
    what pulled the interpolated point onto the node. Vertices with no such
    neighbour (an exact zero at the node) get a zero-length edge.
    """
    v = np.asarray(verts_ijk, dtype=float)
    n = len(v)
    rows = np.arange(n)
    r = np.round(v)
    d = v - r
    axis = np.argmax(np.abs(d), axis=1)
    step = np.sign(d[rows, axis])
    lo = r.copy()
    hi = r.copy()
    moved = step != 0
    lo[rows[moved], axis[moved]] += np.minimum(step[moved], 0.0)
    hi[rows[moved], axis[moved]] += np.maximum(step[moved], 0.0)
    node = np.flatnonzero(~moved)
    if len(node):
        shape = np.array(filled.shape)
        c = r[node].astype(np.int64)
        fc = filled[c[:, 0], c[:, 1], c[:, 2]]
        best = np.zeros(len(node))
        for ax in range(3):
            for sgn in (-1, 1):
                nb = c.copy()
                nb[:, ax] += sgn
                inside = (nb[:, ax] >= 0) & (nb[:, ax] < shape[ax])
                nbc = np.clip(nb, 0, shape - 1)
                fn = filled[nbc[:, 0], nbc[:, 1], nbc[:, 2]]
                take = inside & (np.sign(fn) * np.sign(fc) < 0) & (np.abs(fn) > best)
                best = np.where(take, np.abs(fn), best)
                k = node[take]
                lo[k] = np.minimum(c[take], nb[take])
                hi[k] = np.maximum(c[take], nb[take])
    return lo.astype(np.int64), hi.astype(np.int64)


def polish_edges(field: ScalarField, grid: GridSpec, lo: np.ndarray, hi: np.ndarray,
                 start: np.ndarray, iso_tol: float = 1e-6) -> tuple[np.ndarray, np.ndarray]:
    """Move vertices onto the zero of the field along their grid edges.

    The sign change between the edge end points is bisected in double
    precision; vertices on edges without a sign change keep ``start``.
    Returns the points and a flag for sign changes that survive bisection
    with both bracket values above ``iso_tol``: there the field jumps.
    """
    a, b = grid.to_world(lo), grid.to_world(hi)
    with np.errstate(all="ignore"):
        fa, fb = field(a), field(b)
    bracket = np.isfinite(fa) & np.isfinite(fb) & (np.sign(fa) * np.sign(fb) < 0)
    out = np.array(start, dtype=float)
    jump = np.zeros(len(out), dtype=bool)
    if not np.any(bracket):
        return out, jump
    a, b, fa = a[bracket], b[bracket], fa[bracket]
    for _ in range(_BISECTIONS):
        m = 0.5 * (a + b)
        with np.errstate(all="ignore"):
            fm = field(m)
        left = np.sign(fm) == np.sign(fa)
        a = np.where(left[:, None], m, a)
        fa = np.where(left, fm, fa)
        b = np.where(left[:, None], b, m)
    with np.errstate(all="ignore"):
        fa_end, fb_end = field(a), field(b)
    out[bracket] = np.where((np.abs(fa_end) <= np.abs(fb_end))[:, None], a, b)
    jump[bracket] = np.minimum(np.abs(fa_end), np.abs(fb_end)) > iso_tol
    return out, jump


def extract_isosurface(field: ScalarField, grid: GridSpec | None = None) -> TriangleMesh:
    """Zero set of ``field`` as a triangle mesh.

    Cells with an invalid corner are skipped. Vertices are polished along
    their grid edges; sign changes that turn out to be jumps of the field
    (see polish_edges) are not surface points, and faces using them are
    dropped with a warning. The vertex residuals are stored on the mesh.
    """
    grid = grid or GridSpec(field.bounds)
    values, valid = sample(field, grid)
    if not np.any(valid):
        return _empty(field.name, "field has no valid sample in the grid")
    vv = values[valid]
    if vv.min() > 0 or vv.max() < 0:
        return _empty(field.name, "no sign change in the grid: empty surface")
    filler = float(np.max(np.abs(vv))) + 1.0
    filled = np.where(valid, values, filler)
    try:
        verts, faces, _, _ = marching_cubes(filled, level=0.0, allow_degenerate=False)
    except (ValueError, RuntimeError):
        return _empty(field.name, "no sign change in the grid: empty surface")

    # a face lives in the cell that contains its centroid
    cell_ok = (
        valid[:-1, :-1, :-1] & valid[1:, :-1, :-1] & valid[:-1, 1:, :-1] & valid[:-1, :-1, 1:]
        & valid[1:, 1:, :-1] & valid[1:, :-1, 1:] & valid[:-1, 1:, 1:] & valid[1:, 1:, 1:]
    )
    cent = verts[faces].mean(axis=1)
    cell = np.clip(np.floor(cent).astype(np.int64), 0, np.array(cell_ok.shape) - 1)
    faces = faces[cell_ok[cell[:, 0], cell[:, 1], cell[:, 2]]]
    if len(faces) == 0:
        return _empty(field.name, "surface lies entirely in invalid cells")

    used = np.unique(faces)
    lo, hi = vertex_edges(verts[used], filled)
    edge_ok = valid[lo[:, 0], lo[:, 1], lo[:, 2]] & valid[hi[:, 0], hi[:, 1], hi[:, 2]]
    bad_vertex = np.zeros(len(verts), dtype=bool)
    bad_vertex[used] = ~edge_ok
    faces = faces[~np.any(bad_vertex[faces], axis=1)]
    if len(faces) == 0:
        return _empty(field.name, "surface lies entirely in invalid cells")
    world = np.zeros((len(verts), 3))
    jumps = np.zeros(len(verts), dtype=bool)
    world[used], jumps[used] = polish_edges(field, grid, lo, hi, grid.to_world(verts[used]), grid.iso_tol)
    res = np.zeros(len(verts))
    with np.errstate(all="ignore"):
        res[used] = field(world[used])
    mesh_warnings = []
    if np.any(jumps):
        bad_face = np.any(jumps[faces], axis=1)
        mesh_warnings.append(f"dropped {int(bad_face.sum())} faces straddling a jump of the field")
        faces = faces[~bad_face]
    if len(faces) == 0:
        return _empty(field.name, "only jump crossings found: empty surface")
    v, f, r = _compact(world, faces, res)
    return TriangleMesh(v, f, r, name=field.name, warnings=mesh_warnings)


def _grid_faces(ok: np.ndarray) -> np.ndarray:
    """Two triangles per quad of a (nu, nv) node grid, keeping those with all nodes ok."""
    nu, nv = ok.shape
    idx = np.arange(nu * nv).reshape(nu, nv)
    a, b = idx[:-1, :-1].ravel(), idx[1:, :-1].ravel()
    c, d = idx[1:, 1:].ravel(), idx[:-1, 1:].ravel()
    tris = np.concatenate([np.stack([a, b, c], 1), np.stack([a, c, d], 1)])
    flat = ok.ravel()
    return tris[np.all(flat[tris], axis=1)]


def _grid_mesh(pts: np.ndarray, ok: np.ndarray, residual, name: str) -> TriangleMesh:
    faces = _grid_faces(ok)
    if len(faces) == 0:
        return _empty(name, "empty domain: no faces")
    flat = pts.reshape(-1, 3)
    used = np.unique(faces)
    res = np.zeros(len(flat))
    if residual is not None:
        res[used] = residual(flat[used])
    v, f, r = _compact(flat, faces, res)
    return TriangleMesh(v, f, r, name=name)


def mesh_graph(f: Callable, domain: Callable, grid: GridSpec, *,
               residual: Callable | None = None, name: str = "") -> TriangleMesh:
    """Graph z = f(x, y) over the xy part of ``grid``, restricted to ``domain``.

    Quads with a node outside the domain, a non-finite height or a height
    outside the z range of the box are left out.
    """
    b = grid.bounds
    xs = np.linspace(b.xmin, b.xmax, grid.resolution[0] + 1)
    ys = np.linspace(b.ymin, b.ymax, grid.resolution[1] + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    ok = np.asarray(domain(X, Y), dtype=bool)
    with np.errstate(all="ignore"):
        Z = np.where(ok, f(np.where(ok, X, 0.0), np.where(ok, Y, 0.0)), np.nan)
    ok &= np.isfinite(Z) & (Z >= b.zmin) & (Z <= b.zmax)
    pts = np.stack([X, Y, np.where(ok, Z, 0.0)], axis=-1)
    return _grid_mesh(pts, ok, residual, name)


def mesh_parametric(point: Callable, u_range: tuple[float, float], v_range: tuple[float, float],
                    grid: GridSpec, *, residual: Callable | None = None, name: str = "") -> TriangleMesh:
    """Parametric surface (u, v) -> point, clipped to the box of ``grid``."""
    us = np.linspace(*u_range, grid.resolution[0] + 1)
    vs = np.linspace(*v_range, grid.resolution[1] + 1)
    U, V = np.meshgrid(us, vs, indexing="ij")
    with np.errstate(all="ignore"):
        pts = np.asarray(point(U, V), dtype=float)
    ok = np.all(np.isfinite(pts), axis=-1)
    ok &= grid.bounds.contains(np.where(ok[..., None], pts, 0.0))
    return _grid_mesh(np.where(ok[..., None], pts, 0.0), ok, residual, name)


# -- file formats ------------------------------------------------------------------

def _fmt(x: float) -> str:
    return "%.17g" % (x + 0.0)


def to_obj(mesh: TriangleMesh) -> str:
    lines = [f"# {mesh.name}" if mesh.name else "# mesh"]
    lines += [f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}" for x, y, z in mesh.vertices]
    lines += [f"f {i + 1} {j + 1} {k + 1}" for i, j, k in mesh.faces]
    return "\n".join(lines) + "\n"


def to_ply(mesh: TriangleMesh) -> str:
    head = [
        "ply",
        "format ascii 1.0",
        f"comment {mesh.name}" if mesh.name else "comment mesh",
        f"element vertex {len(mesh.vertices)}",
        "property double x",
        "property double y",
        "property double z",
        "property double residual",
        f"element face {len(mesh.faces)}",
        "property list uchar int vertex_indices",
        "end_header",
    ]
    body = [f"{_fmt(x)} {_fmt(y)} {_fmt(z)} {_fmt(r)}" for (x, y, z), r in zip(mesh.vertices, mesh.residuals)]
    body += [f"3 {i} {j} {k}" for i, j, k in mesh.faces]
    return "\n".join(head + body) + "\n"


def export(mesh: TriangleMesh, fmt: str, path) -> Path:
    fmt = fmt.lower()
    if fmt == "obj":
        text = to_obj(mesh)
    elif fmt == "ply":
        text = to_ply(mesh)
    else:
        raise ContractViolation(f"unknown mesh format {fmt!r} (expected obj or ply)")
    path = Path(path)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
    return path


def read_obj(path) -> tuple[np.ndarray, np.ndarray]:
    """Vertices and 0-based faces of an OBJ file written by ``export``."""
    verts, faces = [], []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                verts.append([float(t) for t in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(t.split("/")[0]) - 1 for t in parts[1:4]])
    return np.array(verts, dtype=float).reshape(-1, 3), np.array(faces, dtype=np.int64).reshape(-1, 3)


def read_ply(path) -> tuple[np.ndarray, np.ndarray]:
    with open(path, encoding="ascii") as fh:
        lines = fh.read().splitlines()
    nv = nf = 0
    end = 0
    for i, line in enumerate(lines):
        if line.startswith("element vertex"):
            nv = int(line.split()[-1])
        elif line.startswith("element face"):
            nf = int(line.split()[-1])
        elif line == "end_header":
            end = i + 1
            break
    verts = np.array([[float(t) for t in l.split()[:3]] for l in lines[end : end + nv]]).reshape(-1, 3)
    faces = np.array([[int(t) for t in l.split()[1:4]] for l in lines[end + nv : end + nv + nf]],
                     dtype=np.int64).reshape(-1, 3)
    return verts, faces
