"""Uniform access to the five geometries: distance, inverse problem, forward curves."""

from __future__ import annotations

import math
from dataclasses import asdict, is_dataclass

import numpy as np

from . import nil, product, slr, sol
from .core import (
    ApolloniusSpec,
    Box,
    ContractViolation,
    GeometryError,
    GeometryId,
    ScalarField,
    as_points,
    check_point,
    is_valid,
)

PRODUCTS = (GeometryId.S2XR, GeometryId.H2XR)
APOLLONIUS_GEOMETRIES = (GeometryId.NIL, GeometryId.SOL, GeometryId.SLR)


def distance(g, p, q) -> np.ndarray:
    """Translation distance d^t(p, q)."""
    g = GeometryId.parse(g)
    if g is GeometryId.NIL:
        return nil.distance(p, q)
    if g is GeometryId.SOL:
        return sol.distance(p, q)
    if g is GeometryId.SLR:
        return slr.distance(p, q)
    return product.distance(g, p, q)


def distance_from_origin(g, p) -> np.ndarray:
    g = GeometryId.parse(g)
    return distance(g, g.origin, p)


def inverse(g, p):
    """Curve parameters of the translation curve from the origin to ``p``."""
    g = GeometryId.parse(g)
    if g is GeometryId.NIL:
        return nil.inverse(p)
    if g is GeometryId.SOL:
        return sol.inverse(p)
    if g is GeometryId.SLR:
        return slr.inverse(p)
    return product.inverse(g, p)


def forward(g, params) -> np.ndarray:
    """Endpoint of the curve described by ``params``; inverse() undone."""
    g = GeometryId.parse(g)
    if g is GeometryId.NIL:
        return nil.params_point(params)
    if g is GeometryId.SOL:
        return sol.params_point(params)
    if g is GeometryId.SLR:
        return slr.params_point(params)
    return product.params_point(g, params)


def params_length(params) -> float:
    for name in ("r", "t", "s", "tau"):
        if hasattr(params, name):
            return float(getattr(params, name))
    raise GeometryError(f"no length field on {params!r}")


def params_to_dict(params) -> dict:
    if not is_dataclass(params):
        raise GeometryError("curve parameters must be a dataclass")
    out = {}
    for k, v in asdict(params).items():
        out[k] = v.value if hasattr(v, "value") else v
    return out


def unit_tangent(g, direction_angles) -> np.ndarray:
    """Unit initial tangent (at the origin) for the per-geometry angle pair."""
    g = GeometryId.parse(g)
    a, b = (np.asarray(v, dtype=float) for v in direction_angles)
    if g in (GeometryId.NIL, GeometryId.SOL):
        phi, theta = a, b
        return np.stack([np.cos(theta) * np.cos(phi), np.cos(theta) * np.sin(phi), np.sin(theta)], axis=-1)
    # (lam, alpha) for SLR and (u, v) for the products share one layout
    return np.stack([np.sin(b), np.cos(b) * np.cos(a), np.cos(b) * np.sin(a)], axis=-1)


def angles_of(g, tangent) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of unit_tangent."""
    g = GeometryId.parse(g)
    t = as_points(tangent)
    if g in (GeometryId.NIL, GeometryId.SOL):
        return np.arctan2(t[..., 1], t[..., 0]), np.arctan2(t[..., 2], np.hypot(t[..., 0], t[..., 1]))
    return np.arctan2(t[..., 2], t[..., 1]), np.arctan2(t[..., 0], np.hypot(t[..., 1], t[..., 2]))


def curve_from_tangent(g, tangent, length) -> np.ndarray:
    """Closed-form endpoint of the curve with unit initial tangent after ``length``."""
    g = GeometryId.parse(g)
    a, b = angles_of(g, tangent)
    if g is GeometryId.NIL:
        return nil.curve_point(a, b, length)
    if g is GeometryId.SOL:
        return sol.curve_point(a, b, length)
    if g is GeometryId.SLR:
        return slr.curve_point(a, b, length)
    return product.curve_point(g, a, b, length)


def random_points(g, n: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded valid points away from the origin, inside the default figure windows."""
    g = GeometryId.parse(g)
    if g in (GeometryId.NIL, GeometryId.SOL):
        return rng.uniform(-3.0, 3.0, (n, 3))
    if g is GeometryId.SLR:
        out = np.zeros((0, 3))
        while len(out) < n:
            p = rng.uniform(-2.0, 2.0, (2 * n, 3))
            m = p[:, 1] ** 2 + p[:, 2] ** 2 - p[:, 0] ** 2
            out = np.concatenate([out, p[m < 0.9]])
        return out[:n]
    if g is GeometryId.S2XR:
        # keep clear of the antipodal fibre, where the direction is not unique
        dirs = rng.normal(size=(n, 3))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        dirs[:, 0] = np.maximum(dirs[:, 0], -0.95)
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        return dirs * np.exp(rng.uniform(-1.5, 1.5, (n, 1)))
    polar = rng.uniform(0.0, 2.0, n)
    az = rng.uniform(-math.pi, math.pi, n)
    return product.unit_surface_point(g, polar, az) * np.exp(rng.uniform(-1.5, 1.5, (n, 1)))


def apollonius_field(g, spec: ApolloniusSpec, bounds: Box | None = None) -> ScalarField:
    g = GeometryId.parse(g)
    if g not in APOLLONIUS_GEOMETRIES:
        raise ContractViolation(f"Apollonius surfaces are only provided for nil, sol and slr, not {g.value}")
    mod = {GeometryId.NIL: nil, GeometryId.SOL: sol, GeometryId.SLR: slr}[g]
    return mod.apollonius_field(spec, bounds or mod.DEFAULT_BOUNDS)


def triangle_surface(g, p2, p3):
    g = GeometryId.parse(g)
    if g is GeometryId.NIL:
        return nil.triangle_surface(p2, p3)
    if g is GeometryId.SOL:
        return sol.triangle_surface(p2, p3)
    if g is GeometryId.SLR:
        check_point(g, p2)
        check_point(g, p3)
        return slr.triangle_surface(p2, p3)
    return product.triangle_surface(g, p2, p3)


def default_bounds(g) -> Box:
    g = GeometryId.parse(g)
    if g in PRODUCTS:
        return product.default_bounds(g)
    return Box.cube(3.0)


def validity(g):
    g = GeometryId.parse(g)
    return lambda p: is_valid(g, p)
