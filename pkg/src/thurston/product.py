"""S^2 x R and H^2 x R in the projective model, handled together.

A point p = (x, y, z) has fibre coordinate ln|p| and base point p/|p| on the
unit sphere (|p|^2 = x^2 + y^2 + z^2) or on the unit hyperboloid sheet
(|p|^2 = x^2 - y^2 - z^2, x > 0). The origin of the model is E0 = (1, 0, 0).
Throughout, ``sign`` is +1 for S^2 x R and -1 for H^2 x R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Box,
    Collineation,
    ContractViolation,
    DegenerateTriangleError,
    GeometryError,
    GeometryId,
    ScalarField,
    ZeroLengthError,
    as_points,
    check_point,
    is_valid,
)

E0 = np.array([1.0, 0.0, 0.0])
_SERIES_CUT = 1e-4


def _sign(g: GeometryId) -> float:
    if g is GeometryId.S2XR:
        return 1.0
    if g is GeometryId.H2XR:
        return -1.0
    raise GeometryError(f"{g} is not a product geometry")


def default_bounds(g: GeometryId) -> Box:
    if g is GeometryId.S2XR:
        return Box.cube(4.0)
    return Box(0.0, 6.0, -3.0, 3.0, -3.0, 3.0)


@dataclass(frozen=True)
class ProductCurveParams:
    u: float
    v: float
    tau: float
    sign: float

    def tangent(self) -> np.ndarray:
        return np.array(
            [math.sin(self.v), math.cos(self.v) * math.cos(self.u), math.cos(self.v) * math.sin(self.u)]
        )


def _C(sign, t):
    return np.cos(t) if sign > 0 else np.cosh(t)


def _S(sign, t):
    return np.sin(t) if sign > 0 else np.sinh(t)


def curve_point(g: GeometryId, u, v, tau) -> np.ndarray:
    """Point at arclength ``tau`` on the translation curve from E0 with angles (u, v)."""
    sign = _sign(g)
    u, v, tau = np.broadcast_arrays(*(np.asarray(w, dtype=float) for w in (u, v, tau)))
    scale = np.exp(tau * np.sin(v))
    base = tau * np.cos(v)
    return np.stack(
        [scale * _C(sign, base), scale * _S(sign, base) * np.cos(u), scale * _S(sign, base) * np.sin(u)],
        axis=-1,
    )


def params_point(g: GeometryId, params: ProductCurveParams, tau: float | None = None) -> np.ndarray:
    return curve_point(g, params.u, params.v, params.tau if tau is None else tau)


def norm2(g: GeometryId, p) -> np.ndarray:
    """x^2 +- (y^2 + z^2)."""
    p = as_points(p)
    return p[..., 0] ** 2 + _sign(g) * (p[..., 1] ** 2 + p[..., 2] ** 2)


def _atanc(t):
    small = np.abs(t) < _SERIES_CUT
    ts = np.where(small, 1.0, t)
    return np.where(small, 1.0 - t * t / 3.0 + t**4 / 5.0, np.arctan(ts) / ts)


def _artanhc(t):
    small = np.abs(t) < _SERIES_CUT
    ts = np.where(small, 0.5, t)
    return np.where(small, 1.0 + t * t / 3.0 + t**4 / 5.0, np.arctanh(ts) / ts)


def _base_angle_over_s(g: GeometryId, x, s):
    """arcC(x/|p|) / sqrt(y^2 + z^2), continuous through y = z = 0 on the positive x side."""
    if _sign(g) > 0:
        with np.errstate(divide="ignore", invalid="ignore"):
            pos = _atanc(s / np.where(x > 0, x, 1.0)) / np.where(x > 0, x, 1.0)
            neg = np.arctan2(s, x) / np.where(s > 0, s, 1.0)
        # s = 0, x < 0 is the antipode; pick the y direction there
        neg = np.where(s > 0, neg, math.pi)
        return np.where(x > 0, pos, neg)
    return _artanhc(s / x) / x


def tangent_functional(g: GeometryId, p) -> np.ndarray:
    """tau * t_P: initial tangent at E0 of the curve to ``p``, scaled by its length."""
    p = as_points(p)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    s = np.hypot(y, z)
    k = _base_angle_over_s(g, x, s)
    antipode = (s == 0) & (x < 0)
    ky = np.where(antipode, k, k * y)
    return np.stack([0.5 * np.log(norm2(g, p)), ky, k * z], axis=-1)


def tangent_functional_printed(g: GeometryId, p) -> np.ndarray:
    """The same vector written literally with arccos / arccosh (needs y^2 + z^2 > 0)."""
    p = as_points(p)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    n2 = norm2(g, p)
    arc = np.arccos if _sign(g) > 0 else np.arccosh
    beta = arc(x / np.sqrt(n2))
    s = np.sqrt(y * y + z * z)
    return np.stack([0.5 * np.log(n2), y * beta / s, z * beta / s], axis=-1)


def inverse(g: GeometryId, p) -> ProductCurveParams:
    p = check_point(g, as_points(p).reshape(3))
    vec = tangent_functional(g, p)
    tau = float(np.linalg.norm(vec))
    if tau == 0.0:
        raise ZeroLengthError("no translation curve parameters for the origin itself")
    beta = math.hypot(vec[1], vec[2])
    v = math.atan2(vec[0], beta)
    u = math.atan2(vec[2], vec[1]) if beta > 0 else 0.0
    return ProductCurveParams(u, v, tau, _sign(g))


def pullback_block(g: GeometryId, p) -> np.ndarray:
    """Lower-right 3x3 block of the pull-back collineation, vectorized over ``p``.

    Entries agree with the closed-form matrix; the yz block is written as
    delta/|p| + (x - |p|) p_j p_k / (|p|^2 (y^2 + z^2)) with the difference
    x - |p| rewritten so that it stays accurate next to the x axis.
    """
    sign = _sign(g)
    p = as_points(p)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    n2 = norm2(g, p)
    rho = np.sqrt(n2)
    s2 = y * y + z * z
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        coef_pos = -sign / (n2 * (x + rho))
        coef_neg = (x - rho) / (n2 * np.where(s2 > 0, s2, 1.0))
    coef = np.where(x > 0, coef_pos, coef_neg)
    m = np.zeros(p.shape[:-1] + (3, 3))
    m[..., 0, 0] = x / n2
    m[..., 0, 1] = -y / n2
    m[..., 0, 2] = -z / n2
    m[..., 1, 0] = sign * y / n2
    m[..., 2, 0] = sign * z / n2
    m[..., 1, 1] = 1.0 / rho + coef * y * y
    m[..., 1, 2] = coef * y * z
    m[..., 2, 1] = coef * y * z
    m[..., 2, 2] = 1.0 / rho + coef * z * z
    antipode = (s2 == 0) & (x < 0)
    if np.any(antipode):
        # rotation by pi in the xy plane, scaled by 1/|p|
        flip = np.diag([-1.0, -1.0, 1.0])
        m[antipode] = flip / rho[antipode][..., None, None]
    return m


def pullback(g: GeometryId, p) -> Collineation:
    """The collineation taking ``p`` to E0 = (1, 1, 0, 0)."""
    p = check_point(g, as_points(p).reshape(3))
    full = np.eye(4)
    full[1:, 1:] = pullback_block(g, p)
    return Collineation(full)


def pullback_printed(g: GeometryId, p) -> np.ndarray:
    """The pull-back matrix entry by entry from the closed form (needs y^2 + z^2 > 0).

    The two off-diagonal yz entries are (x y z - y z |p|) / (|p|^2 (y^2 + z^2)).
    """
    sign = _sign(g)
    x, y, z = (float(v) for v in as_points(p).reshape(3))
    n2 = x * x + sign * (y * y + z * z)
    rt = math.sqrt(n2)
    s2 = y * y + z * z
    return np.array(
        [
            [1, 0, 0, 0],
            [0, x / n2, -y / n2, -z / n2],
            [0, sign * y / n2, (x * y * y + z * z * rt) / (n2 * s2), (x * y * z - y * z * rt) / (n2 * s2)],
            [0, sign * z / n2, (x * y * z - y * z * rt) / (n2 * s2), (x * z * z + y * y * rt) / (n2 * s2)],
        ]
    )


def translation(g: GeometryId, p) -> Collineation:
    """The translation taking E0 to ``p`` (inverse of the pull-back)."""
    return pullback(g, p).inverse()


def pullback_points(g: GeometryId, p, q) -> np.ndarray:
    """T_p^{-1}(q), vectorized over both arguments."""
    p, q = as_points(p), as_points(q)
    return np.einsum("...i,...ij->...j", q, pullback_block(g, p))


def distance(g: GeometryId, p, q) -> np.ndarray:
    p, q = as_points(p), as_points(q)
    d = np.linalg.norm(tangent_functional(g, pullback_points(g, p, q)), axis=-1)
    return np.where(np.all(p == q, axis=-1), 0.0, d)


def project_to_unit(g: GeometryId, p) -> tuple[np.ndarray, np.ndarray]:
    """Base point on the unit surface along the fibre, and the fibre coordinate ln|p|."""
    p = as_points(p)
    rho = np.sqrt(norm2(g, p))
    return p / rho[..., None], np.log(rho)


def _bilinear(sign, a, b):
    return a[..., 0] * b[..., 0] + sign * (a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2])


def base_distance(g: GeometryId, a, b) -> np.ndarray:
    """Intrinsic distance of two unit-surface points."""
    sign = _sign(g)
    a, b = as_points(a), as_points(b)
    c = _bilinear(sign, a, b)
    t = b - c[..., None] * a
    tn = np.sqrt(np.abs(_bilinear(sign, t, t)))
    if sign > 0:
        return np.arctan2(tn, c)
    return np.arcsinh(tn)


def _unit_tangent_towards(sign, a, b):
    """Unit tangent at ``a`` pointing along the geodesic towards ``b`` (zero if b = a)."""
    c = _bilinear(sign, a, b)
    t = b - c[..., None] * a
    tn = np.sqrt(np.abs(_bilinear(sign, t, t)))
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(tn[..., None] > 0, t / np.where(tn > 0, tn, 1.0)[..., None], 0.0)


@dataclass(frozen=True)
class ProjectedTriangle:
    """Distances d1..d3 from P' to the projected vertices, directed angles at P', fibre logs."""

    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray
    gamma1: np.ndarray
    gamma2: np.ndarray
    gamma3: np.ndarray
    logs: tuple

    def weights(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(w1, w2, w3) = (d2 d3 sin g1, d3 d1 sin g2, d1 d2 sin g3)."""
        return (
            self.d2 * self.d3 * np.sin(self.gamma1),
            self.d3 * self.d1 * np.sin(self.gamma2),
            self.d1 * self.d2 * np.sin(self.gamma3),
        )


def projected_triangle(g: GeometryId, unit_point, p2, p3) -> ProjectedTriangle:
    """Spherical / hyperbolic data of the triangle seen from the base point P'.

    Directed angles are oriented by the normal P' itself (outward on the
    sphere, future-pointing on the hyperboloid): gamma_ij = atan2(det[P', u_i, u_j], <u_i, u_j>).
    """
    sign = _sign(g)
    q = as_points(unit_point)
    verts = [E0, as_points(p2).reshape(3), as_points(p3).reshape(3)]
    units, logs = [], []
    for v in verts:
        w, lg = project_to_unit(g, v)
        units.append(w)
        logs.append(float(lg))
    d = [base_distance(g, q, w) for w in units]
    u = [_unit_tangent_towards(sign, q, w) for w in units]

    def angle(ua, ub):
        det = np.einsum("...i,...i->...", q, np.cross(ua, ub))
        dot = np.einsum("...i,...i->...", ua, ub) if sign > 0 else -_bilinear(sign, ua, ub)
        return np.arctan2(det, dot)

    return ProjectedTriangle(
        d[0], d[1], d[2],
        angle(u[1], u[2]),  # P2' P' P3'
        angle(u[2], u[0]),  # P3' P' P1'
        angle(u[0], u[1]),  # P1' P' P2'
        tuple(logs),
    )


def triangle_residual(g: GeometryId, p, p2, p3) -> np.ndarray:
    """d1 d2 sin(g3) ln(|p3|/|p|) + d2 d3 sin(g1) ln(|p1|/|p|) + d3 d1 sin(g2) ln(|p2|/|p|)."""
    unit, lnp = project_to_unit(g, p)
    return triangle_residual_log(g, unit, lnp, p2, p3)


def triangle_residual_log(g: GeometryId, unit_point, lnp, p2, p3) -> np.ndarray:
    """The same residual from the base point and the fibre coordinate, free of overflow."""
    tri = projected_triangle(g, unit_point, p2, p3)
    w1, w2, w3 = tri.weights()
    l1, l2, l3 = tri.logs
    lnp = np.asarray(lnp, dtype=float)
    return w3 * (l3 - lnp) + w1 * (l1 - lnp) + w2 * (l2 - lnp)


def triangle_triple_product(g: GeometryId, p, p2, p3) -> np.ndarray:
    """Triple product of the E0-tangents of the pulled-back vertices (independent route)."""
    p = as_points(p)
    t = [tangent_functional(g, pullback_points(g, p, v)) for v in (E0, p2, p3)]
    return np.einsum("...i,...i->...", t[0], np.cross(t[1], t[2]))


def _check_triangle(g: GeometryId, p2, p3, tol: float = 1e-12):
    p2 = check_point(g, as_points(p2).reshape(3))
    p3 = check_point(g, as_points(p3).reshape(3))
    t2, t3 = tangent_functional(g, p2), tangent_functional(g, p3)
    scale = max(np.linalg.norm(t2) * np.linalg.norm(t3), 1e-300)
    if np.linalg.norm(np.cross(t2, t3)) <= tol * scale:
        raise DegenerateTriangleError("vertices lie on a single translation curve")
    return p2, p3


def fibre_solve(g: GeometryId, p2, p3, unit_point, *, strict: bool = False, tol: float = 1e-12) -> np.ndarray:
    """ln|p| of the unique surface point on the fibre over ``unit_point``.

    Weighted average of the vertex fibre coordinates; NaN where the weights
    cancel (or raise with ``strict``).
    """
    p2, p3 = _check_triangle(g, p2, p3)
    tri = projected_triangle(g, as_points(unit_point), p2, p3)
    w1, w2, w3 = tri.weights()
    l1, l2, l3 = tri.logs
    den = w1 + w2 + w3
    scale = np.abs(w1) + np.abs(w2) + np.abs(w3)
    bad = ~(np.abs(den) > tol * np.maximum(scale, 1e-300))
    if g is GeometryId.S2XR:
        # angles at P' are undefined when P' is antipodal to a projected vertex
        bad |= np.maximum(np.maximum(tri.d1, tri.d2), tri.d3) > math.pi - 1e-9
    if strict and np.any(bad):
        raise DegenerateTriangleError("weights cancel: no surface point on this fibre")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (w3 * l3 + w1 * l1 + w2 * l2) / np.where(bad, 1.0, den)
    return np.where(bad, np.nan, out)


def unit_surface_point(g: GeometryId, polar, azimuth) -> np.ndarray:
    """Base point by polar angle (sphere) or hyperbolic radius, and azimuth about E0."""
    polar = np.asarray(polar, dtype=float)
    azimuth = np.asarray(azimuth, dtype=float)
    sign = _sign(g)
    return np.stack(
        [_C(sign, polar), _S(sign, polar) * np.cos(azimuth), _S(sign, polar) * np.sin(azimuth)], axis=-1
    )


@dataclass(frozen=True)
class ProductTriangle:
    g: GeometryId
    p2: np.ndarray
    p3: np.ndarray

    def residual(self, p) -> np.ndarray:
        return triangle_residual(self.g, p, self.p2, self.p3)

    def surface_point(self, unit_point) -> np.ndarray:
        """Surface point over ``unit_point``; NaN where there is none or it under/overflows."""
        lnp = fibre_solve(self.g, self.p2, self.p3, unit_point)
        lnp = np.where(np.abs(lnp) < 300.0, lnp, np.nan)
        return np.exp(lnp)[..., None] * as_points(unit_point)

    def field(self, bounds: Box | None = None) -> ScalarField:
        g = self.g
        return ScalarField(
            self.residual,
            bounds or default_bounds(g),
            valid=lambda p: is_valid(g, p),
            name=f"{g.value}-triangle",
        )


def triangle_surface(g: GeometryId, p2, p3) -> ProductTriangle:
    p2, p3 = _check_triangle(g, p2, p3)
    return ProductTriangle(g, p2.copy(), p3.copy())


def curve_between(g: GeometryId, p, q, n: int = 64) -> np.ndarray:
    """Samples of the translation curve from ``p`` to ``q``."""
    p = check_point(g, as_points(p).reshape(3))
    local = pullback_points(g, p, q)
    params = inverse(g, local)
    ts = np.linspace(0.0, params.tau, n)
    pts = curve_point(g, params.u, params.v, ts)
    forward = np.linalg.inv(pullback_block(g, p))
    return pts @ forward


def curve_midpoint(g: GeometryId, p, q) -> np.ndarray:
    p = check_point(g, as_points(p).reshape(3))
    params = inverse(g, pullback_points(g, p, q))
    mid = curve_point(g, params.u, params.v, params.tau / 2)
    return mid @ np.linalg.inv(pullback_block(g, p))


def _sample_surface(tri: ProductTriangle, n: int, rng: np.random.Generator) -> np.ndarray:
    g = tri.g
    if g is GeometryId.S2XR:
        dirs = rng.normal(size=(n, 3))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    else:
        polar = rng.uniform(0.0, 2.0, n)
        az = rng.uniform(-math.pi, math.pi, n)
        dirs = unit_surface_point(g, polar, az)
    pts = tri.surface_point(dirs)
    keep = np.all(np.isfinite(pts), axis=1) & (np.linalg.norm(pts, axis=1) < 1e3)
    return pts[keep]


def nontransitivity_demo(g: GeometryId, p2, p3, *, samples: int = 500, seed: int = 0) -> float:
    """Max |residual of S(P1, P2, P4)| on points of S(P1, P2, P3), P4 the midpoint of P1 P3.

    Generic data gives a clearly positive value: the surfaces differ.
    """
    try:
        tri = triangle_surface(g, p2, p3)
    except ZeroLengthError as exc:
        raise DegenerateTriangleError(str(exc)) from exc
    p4 = curve_midpoint(g, E0, tri.p3)
    other = triangle_surface(g, tri.p2, p4)
    pts = _sample_surface(tri, samples, np.random.default_rng(seed))
    if len(pts) == 0:
        raise ContractViolation("no usable samples on the triangular surface")
    return float(np.max(np.abs(other.residual(pts))))
