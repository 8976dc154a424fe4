"""Input data of the reference surfaces and the per-geometry meshing recipes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import geometries, nil, product, slr
from .core import ApolloniusSpec, Box, GeometryId, TriangleMesh
from .mesh import GridSpec, extract_isosurface, mesh_graph, mesh_parametric


@dataclass(frozen=True)
class ApolloniusCase:
    key: str
    geometry: GeometryId
    p2: tuple[float, float, float]
    sigma: float


@dataclass(frozen=True)
class TriangleCase:
    key: str
    geometry: GeometryId
    p2: tuple[float, float, float]
    p3: tuple[float, float, float]


APOLLONIUS_CASES = (
    ApolloniusCase("fig1", GeometryId.NIL, (-1.0, 1.0, 1.0), 2.0),
    ApolloniusCase("fig2", GeometryId.NIL, (0.5, 1.0, 0.5), 1.0),
    ApolloniusCase("fig3", GeometryId.SOL, (-1.0, 1.0, 0.5), 0.5),
    ApolloniusCase("fig4", GeometryId.SOL, (-1.0, 1.0, 0.5), 1.0),
    ApolloniusCase("fig5", GeometryId.SLR, (0.0, 1 / 6, 1 / 5), 2.0),
    ApolloniusCase("fig6", GeometryId.SLR, (0.25, 0.6, 0.0), 1.0),
)

TRIANGLE_CASES = (
    TriangleCase("fig7", GeometryId.SOL, (-1.0, 1.0, 1.0), (0.5, 1.0, 0.5)),
    TriangleCase("fig8a", GeometryId.NIL, (2.0, 1.0, 1.0), (-2.0, 2.0, 0.0)),
    TriangleCase("fig8b", GeometryId.NIL, (2.0, -3.0, -3.0), (3.0, 3.0, 3.0)),
    TriangleCase("fig9", GeometryId.S2XR, (0.0, -2.0, 2.0), (-2.0, -1.0, -2.0)),
    TriangleCase("fig10", GeometryId.H2XR, (3.0, 1.0, 1.0), (1.9, -1.0, 1.2)),
)


def default_grid(g: GeometryId, res: int = 128, bounds: Box | None = None) -> GridSpec:
    return GridSpec(bounds or geometries.default_bounds(g), (res, res, res))


def apollonius_mesh(g, p2, sigma: float = 1.0, *, res: int = 128, bounds: Box | None = None) -> TriangleMesh:
    """Apollonius surface of the origin and ``p2`` with ratio ``sigma``."""
    g = GeometryId.parse(g)
    grid = default_grid(g, res, bounds)
    field = geometries.apollonius_field(g, ApolloniusSpec(g.origin, np.asarray(p2, float), sigma), grid.bounds)
    return extract_isosurface(field, grid)


def triangle_mesh(g, p2, p3, *, res: int = 128, bounds: Box | None = None) -> TriangleMesh:
    """Triangular surface through the origin, ``p2`` and ``p3``.

    Nil and Sol use their explicit graphs (a plane through the z axis in the
    degenerate Nil case), SL2R its chart plane, the product geometries the
    per-fibre solution over the unit surface.
    """
    g = GeometryId.parse(g)
    grid = default_grid(g, res, bounds)
    tri = geometries.triangle_surface(g, p2, p3)
    name = f"{g.value}-triangle"
    if g is GeometryId.NIL and not tri.is_plane:
        return mesh_graph(tri.explicit, lambda x, y: np.ones_like(x, dtype=bool), grid,
                          residual=tri.residual, name=name)
    if g is GeometryId.SOL:
        return mesh_graph(tri.explicit_masked, tri.in_domain, grid, residual=tri.residual, name=name)
    if g in (GeometryId.NIL, GeometryId.SLR):
        return _plane_mesh(tri, grid, name)
    return _product_mesh(tri, grid, name)


def _plane_mesh(tri, grid: GridSpec, name: str) -> TriangleMesh:
    if isinstance(tri, nil.NilTriangle):
        n = np.array([tri.plane_normal[0], tri.plane_normal[1], 0.0])
    else:
        n = tri.normal
    # orthonormal frame of the plane through the origin
    e1 = np.cross(n, [1.0, 0.0, 0.0] if abs(n[0]) < 0.9 else [0.0, 1.0, 0.0])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    reach = float(np.linalg.norm(np.maximum(np.abs(grid.bounds.lo), np.abs(grid.bounds.hi))))

    def point(u, v):
        return u[..., None] * e1 + v[..., None] * e2

    mesh = mesh_parametric(point, (-reach, reach), (-reach, reach), grid, residual=tri.residual, name=name)
    if isinstance(tri, slr.SlrTriangle) and len(mesh.faces):
        mesh = _restrict(mesh, slr_valid(mesh.vertices))
    return mesh


def slr_valid(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    return 1.0 + p[..., 0] ** 2 - p[..., 1] ** 2 - p[..., 2] ** 2 > 0


def _restrict(mesh: TriangleMesh, keep: np.ndarray) -> TriangleMesh:
    faces = mesh.faces[np.all(keep[mesh.faces], axis=1)]
    if len(faces) == 0:
        out = TriangleMesh.empty(mesh.name)
        out.warnings.append("surface has no part inside the model")
        return out
    used = np.unique(faces)
    remap = np.full(len(mesh.vertices), -1, dtype=np.int64)
    remap[used] = np.arange(len(used))
    return TriangleMesh(mesh.vertices[used], remap[faces], mesh.residuals[used], mesh.name, list(mesh.warnings))


def _product_mesh(tri: product.ProductTriangle, grid: GridSpec, name: str) -> TriangleMesh:
    g = tri.g
    if g is GeometryId.S2XR:
        polar = (0.0, math.pi)
    else:
        # far enough out on the hyperboloid to leave the window
        polar = (0.0, float(np.arccosh(max(2.0, 2.0 * np.linalg.norm(grid.bounds.hi - grid.bounds.lo)))))

    def point(u, v):
        return tri.surface_point(product.unit_surface_point(g, u, v))

    return mesh_parametric(point, polar, (-math.pi, math.pi), grid, residual=tri.residual, name=name)


def reference_meshes(res: int = 128):
    """(case, mesh) for every Apollonius and triangle dataset."""
    for case in APOLLONIUS_CASES:
        yield case, apollonius_mesh(case.geometry, case.p2, case.sigma, res=res)
    for case in TRIANGLE_CASES:
        yield case, triangle_mesh(case.geometry, case.p2, case.p3, res=res)


