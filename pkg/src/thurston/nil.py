"""Nil geometry: Heisenberg-group translations acting on (1, x, y, z) from the right."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    ApolloniusSpec,
    Box,
    Collineation,
    ContractViolation,
    DegenerateTriangleError,
    ScalarField,
    ZeroLengthError,
    as_points,
)

DEFAULT_BOUNDS = Box.cube(3.0)


@dataclass(frozen=True)
class NilCurveParams:
    phi: float
    theta: float
    r: float
    case: int = 1

    def direction(self) -> np.ndarray:
        ct = math.cos(self.theta)
        return np.array([ct * math.cos(self.phi), ct * math.sin(self.phi), math.sin(self.theta)])


def curve_point(phi, theta, t) -> np.ndarray:
    """Point at parameter ``t`` of the unit-speed translation curve leaving the origin."""
    phi, theta, t = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (phi, theta, t)))
    u = np.cos(theta) * np.cos(phi)
    v = np.cos(theta) * np.sin(phi)
    w = np.sin(theta)
    return np.stack([u * t, v * t, 0.5 * u * v * t * t + w * t], axis=-1)


def params_point(params: NilCurveParams, t: float | None = None) -> np.ndarray:
    return curve_point(params.phi, params.theta, params.r if t is None else t)


def inverse(p) -> NilCurveParams:
    """Direction and length of the translation curve from the origin to ``p``.

    The case split follows which of the coordinates vanish. The quadrant of
    ``phi`` is picked with ``atan2`` so that the forward curve reproduces the
    signs of ``(a, b)``; the length always uses the removable-singularity-free
    norm ``sqrt(a^2 + b^2 + (c - ab/2)^2)``.
    """
    a, b, c = (float(v) for v in as_points(p).reshape(3))
    if a == 0.0 and b == 0.0 and c == 0.0:
        raise ZeroLengthError("no translation curve parameters for the origin itself")
    r = math.sqrt(a * a + b * b + (c - a * b / 2) ** 2)
    if a != 0.0 and b != 0.0:
        phi = math.atan2(b, a)
        theta = math.atan((c - a * b / 2) / math.hypot(a, b))
        case = 1
    elif b == 0.0 and c != 0.0 and a != 0.0:
        phi = 0.0 if a > 0 else math.pi
        theta = math.atan(c / abs(a))
        case = 2
    elif b == 0.0 and c == 0.0:
        phi = 0.0 if a > 0 else math.pi
        theta = 0.0
        case = 3
    elif a == 0.0 and c == 0.0:
        phi = math.copysign(math.pi / 2, b)
        theta = 0.0
        case = 4
    elif a == 0.0 and b == 0.0:
        phi = 0.0
        theta = math.copysign(math.pi / 2, c)
        case = 5
    else:
        # (0, b, c) with b, c != 0 is not among the listed cases; it is case 2 turned by pi/2
        phi = math.copysign(math.pi / 2, b)
        theta = math.atan(c / abs(b))
        case = 0
    return NilCurveParams(phi, theta, r, case)


def tangent_functional(p) -> np.ndarray:
    """Initial tangent of the curve from the origin to ``p``, scaled by its length."""
    p = as_points(p)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    return np.stack([x, y, z - 0.5 * x * y], axis=-1)


def pullback(p, q) -> np.ndarray:
    """T_p^{-1}(q): the image of ``q`` under the translation taking ``p`` to the origin."""
    p, q = as_points(p), as_points(q)
    px, py, pz = p[..., 0], p[..., 1], p[..., 2]
    qx, qy, qz = q[..., 0], q[..., 1], q[..., 2]
    return np.stack([qx - px, qy - py, (qz - pz) - px * (qy - py)], axis=-1)


def distance_from_origin(p) -> np.ndarray:
    return np.linalg.norm(tangent_functional(p), axis=-1)


def distance(p, q) -> np.ndarray:
    return distance_from_origin(pullback(p, q))


def translation(p) -> Collineation:
    """Right translation mapping the origin onto ``p``."""
    a, b, c = as_points(p).reshape(3)
    return Collineation([[1, a, b, c], [0, 1, 0, 0], [0, 0, 1, a], [0, 0, 0, 1]])


def translation_inverse(p) -> Collineation:
    a, b, c = as_points(p).reshape(3)
    return Collineation([[1, -a, -b, a * b - c], [0, 1, 0, 0], [0, 0, 1, -a], [0, 0, 0, 1]])


def apollonius_field(spec: ApolloniusSpec, bounds: Box = DEFAULT_BOUNDS) -> ScalarField:
    """sigma * d(P1, P) - d(P, P2); the bisector for sigma = 1."""
    p1, p2, sigma = spec.p1, spec.p2, spec.sigma

    def f(p):
        return sigma * distance(p1, p) - distance(p, p2)

    return ScalarField(f, bounds, name=f"nil-apollonius-sigma{sigma:g}")


def apollonius_closed_form(p, p2, sigma: float) -> np.ndarray:
    """Left side of the written-out implicit equation (first point at the origin)."""
    p = as_points(p)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    a, b, c = as_points(p2).reshape(3)
    lhs = sigma * np.sqrt(x * x + y * y + (0.5 * x * y - z) ** 2)
    rhs = np.sqrt((a - x) ** 2 + (b - y) ** 2 + (-x * b + x * y + c - z - 0.5 * (a - x) * (b - y)) ** 2)
    return lhs - rhs


@dataclass(frozen=True)
class NilTriangle:
    """Translation-like triangular surface through the origin, ``p2`` and ``p3``.

    Generically the graph of a hyperbolic paraboloid ``z = xy/2 + kx*x + ky*y``;
    when ``ae - bd = 0`` it degenerates to a plane through the z axis.
    """

    p2: np.ndarray
    p3: np.ndarray
    kx: float
    ky: float
    plane_normal: np.ndarray | None = None

    @property
    def is_plane(self) -> bool:
        return self.plane_normal is not None

    def explicit(self, x, y):
        if self.is_plane:
            raise DegenerateTriangleError("vertical plane has no explicit z(x, y) form")
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return 0.5 * x * y + self.kx * x + self.ky * y

    def residual(self, p) -> np.ndarray:
        p = as_points(p)
        if self.is_plane:
            n = self.plane_normal
            return n[0] * p[..., 0] + n[1] * p[..., 1]
        return p[..., 2] - self.explicit(p[..., 0], p[..., 1])

    def triple(self, p) -> np.ndarray:
        return triangle_triple_product(p, self.p2, self.p3)

    def field(self, bounds: Box = DEFAULT_BOUNDS) -> ScalarField:
        return ScalarField(self.residual, bounds, name="nil-triangle")


def triangle_triple_product(p, p2, p3) -> np.ndarray:
    """Triple product of the origin tangents of the curves from ``p`` to E0, ``p2``, ``p3``."""
    p = as_points(p)
    t1 = tangent_functional(pullback(p, np.zeros(3)))
    t2 = tangent_functional(pullback(p, p2))
    t3 = tangent_functional(pullback(p, p3))
    return np.einsum("...i,...i->...", t1, np.cross(t2, t3))


def triangle_surface(p2, p3, *, tol: float = 1e-12) -> NilTriangle:
    p2 = as_points(p2).reshape(3).copy()
    p3 = as_points(p3).reshape(3).copy()
    t2, t3 = tangent_functional(p2), tangent_functional(p3)
    scale = max(np.linalg.norm(t2) * np.linalg.norm(t3), 1e-300)
    if np.linalg.norm(np.cross(t2, t3)) <= tol * scale:
        raise DegenerateTriangleError("vertices lie on a single translation curve")
    a, b, c = p2
    d, e, f = p3
    den = a * e - b * d
    if abs(den) <= tol * max(1.0, abs(a * e), abs(b * d)):
        ab = np.array([a, b]) if np.hypot(a, b) > np.hypot(d, e) else np.array([d, e])
        n = np.array([ab[1], -ab[0]]) / np.hypot(*ab)
        return NilTriangle(p2, p3, math.nan, math.nan, plane_normal=n)
    kx = (b * d * e - a * b * e + 2 * c * e - 2 * b * f) / (2 * den)
    ky = (a * b * d - a * d * e + 2 * a * f - 2 * c * d) / (2 * den)
    return NilTriangle(p2, p3, float(kx), float(ky))


def triangle_transitivity_check(p2, p3, p4, *, strict: bool = True) -> float:
    """Largest coefficient difference between S(E0, P2, P3) and S(E0, P2, P4).

    Both surfaces are fixed by two numbers (kx, ky), or by a unit normal in
    the plane case, so comparing those is an exact comparison of the surfaces.
    """
    tri = triangle_surface(p2, p3)
    p4 = as_points(p4).reshape(3)
    if strict and abs(float(tri.residual(p4))) > 1e-9:
        raise ContractViolation("p4 is not on the triangular surface")
    other = triangle_surface(p2, p4)
    if tri.is_plane != other.is_plane:
        return math.inf
    if tri.is_plane:
        n, m = tri.plane_normal, other.plane_normal
        return float(min(np.abs(n - m).max(), np.abs(n + m).max()))
    return float(max(abs(tri.kx - other.kx), abs(tri.ky - other.ky)))
