"""Universal cover of SL(2,R) in the hyperboloid model, single inhomogeneous chart.

A point (x, y, z) stands for (1, x, y, z); the model interior is
1 + x^2 - y^2 - z^2 > 0. Translation curves from the origin are Euclidean
rays in this chart; the arclength along them depends on the sign of
x^2 - y^2 - z^2 (fibre-like, light-like, H^2-like).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    ApolloniusSpec,
    Box,
    Collineation,
    DegenerateTriangleError,
    OutOfChartError,
    ScalarField,
    ZeroLengthError,
    as_points,
)

DEFAULT_BOUNDS = Box.cube(3.0)
_SERIES_CUT = 1e-4


class CurveClass(str, enum.Enum):
    H2_LIKE = "H2like"
    LIGHT_LIKE = "LightLike"
    FIBRE_LIKE = "FibreLike"


LIGHT_TOL = 1e-12


def classify(alpha: float) -> CurveClass:
    a = abs(alpha)
    if a < math.pi / 4:
        return CurveClass.H2_LIKE
    if a == math.pi / 4:
        return CurveClass.LIGHT_LIKE
    return CurveClass.FIBRE_LIKE


@dataclass(frozen=True)
class SlrCurveParams:
    lam: float
    alpha: float
    s: float
    kind: CurveClass

    def direction(self) -> np.ndarray:
        return _direction(self.lam, self.alpha)


def _direction(lam, alpha):
    return np.stack(
        [np.sin(alpha), np.cos(alpha) * np.cos(lam), np.cos(alpha) * np.sin(lam)], axis=-1
    )


def _tanhc(m):
    """tanh(sqrt m)/sqrt m for m > 0, tan(sqrt -m)/sqrt -m for m < 0."""
    m = np.asarray(m, dtype=float)
    small = np.abs(m) < _SERIES_CUT
    r = np.sqrt(np.abs(np.where(small, 1.0, m)))
    big = np.where(m > 0, np.tanh(r) / r, np.tan(r) / r)
    return np.where(small, 1.0 - m / 3.0 + 2.0 * m * m / 15.0 - 17.0 * m**3 / 315.0, big)


def _artanhc(m):
    """Inverse of the above in the sense artanhc(m) * tanhc(m * artanhc(m)^2) = 1."""
    m = np.asarray(m, dtype=float)
    small = np.abs(m) < _SERIES_CUT
    r = np.sqrt(np.abs(np.where(small, 0.25, m)))
    with np.errstate(divide="ignore", invalid="ignore"):
        big = np.where(m > 0, np.arctanh(np.minimum(r, 1.0)) / r, np.arctan(r) / r)
    return np.where(small, 1.0 + m / 3.0 + m * m / 5.0 + m**3 / 7.0, big)


def _cosh_root(m):
    m = np.asarray(m, dtype=float)
    r = np.sqrt(np.abs(m))
    return np.where(m >= 0, np.cosh(r), np.cos(r))


def _sinhc(m):
    m = np.asarray(m, dtype=float)
    small = np.abs(m) < _SERIES_CUT
    r = np.sqrt(np.abs(np.where(small, 1.0, m)))
    big = np.where(m > 0, np.sinh(r) / r, np.sin(r) / r)
    return np.where(small, 1.0 + m / 6.0 + m * m / 120.0, big)


def curve_point(lam, alpha, s, *, strict: bool = True) -> np.ndarray:
    """Chart point at arclength ``s`` along the curve with initial tangent (lam, alpha).

    Fibre-like curves leave the chart at s * sqrt(-cos 2 alpha) = pi/2; with
    ``strict`` that raises, otherwise those samples come back as NaN.
    """
    lam, alpha, s = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (lam, alpha, s)))
    m = np.cos(2 * alpha) * s * s
    out = m <= -((math.pi / 2) ** 2)
    if strict and np.any(out):
        raise OutOfChartError("fibre-like translation curve leaves the chart")
    scale = np.where(out, np.nan, s * _tanhc(np.where(out, 0.0, m)))
    return scale[..., None] * _direction(lam, alpha)


def curve_homogeneous(lam, alpha, s) -> np.ndarray:
    """Homogeneous (x^0, x^1, x^2, x^3) of the curve; no chart restriction."""
    lam, alpha, s = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (lam, alpha, s)))
    m = np.cos(2 * alpha) * s * s
    head = _cosh_root(m)
    tail = (s * _sinhc(m))[..., None] * _direction(lam, alpha)
    return np.concatenate([head[..., None], tail], axis=-1)


def params_point(params: SlrCurveParams, s: float | None = None) -> np.ndarray:
    return curve_point(params.lam, params.alpha, params.s if s is None else s)


def inverse(p) -> SlrCurveParams:
    """Curve parameters for the chart point ``p``.

    ``alpha = arctan(a / sqrt(b^2 + c^2))`` carries the sign of ``a``, which
    is the symmetric counterpart of the positive-``a`` convention. The length
    comes from inverting the row of the curve table that matches the sign of
    ``a^2 - b^2 - c^2``.
    """
    a, b, c = (float(v) for v in as_points(p).reshape(3))
    if a == 0.0 and b == 0.0 and c == 0.0:
        raise ZeroLengthError("no translation curve parameters for the origin itself")
    m = b * b + c * c - a * a
    if m >= 1.0:
        raise OutOfChartError(f"point {(a, b, c)} is outside the hyperboloid model")
    rho = math.sqrt(a * a + b * b + c * c)
    if b == 0.0 and c == 0.0:
        return SlrCurveParams(0.0, math.copysign(math.pi / 2, a), math.atan(abs(a)), CurveClass.FIBRE_LIKE)
    alpha = math.atan2(a, math.hypot(b, c))
    lam = math.atan2(c, b)
    disc = a * a - b * b - c * c
    # the cone is a measure-zero set; accept points within rounding of it
    if abs(disc) <= LIGHT_TOL * rho * rho:
        kind = CurveClass.LIGHT_LIKE
        alpha = math.copysign(math.pi / 4, a)
    elif disc < 0:
        kind = CurveClass.H2_LIKE
    else:
        kind = CurveClass.FIBRE_LIKE
    return SlrCurveParams(lam, alpha, rho * float(_artanhc(m)), kind)


def distance_from_origin(p) -> np.ndarray:
    """Translation distance from E0; NaN outside the model."""
    p = as_points(p)
    rho = np.linalg.norm(p, axis=-1)
    m = p[..., 1] ** 2 + p[..., 2] ** 2 - p[..., 0] ** 2
    ok = m < 1.0
    return np.where(ok, rho * _artanhc(np.where(ok, m, 0.0)), np.nan)


def _t_matrix(h) -> np.ndarray:
    x0, x1, x2, x3 = h
    return np.array(
        [[x0, x1, x2, x3], [-x1, x0, x3, -x2], [x2, x3, x0, x1], [x3, -x2, -x1, x0]], dtype=float
    )


def translation(p) -> Collineation:
    """The translation taking E0 to ``p``."""
    x, y, z = as_points(p).reshape(3)
    return Collineation(_t_matrix((1.0, x, y, z)))


def translation_inverse(p) -> Collineation:
    x, y, z = as_points(p).reshape(3)
    n = 1.0 + x * x - y * y - z * z
    if n <= 0:
        raise OutOfChartError("translation is only defined for model points")
    return Collineation(_t_matrix((1.0, -x, -y, -z)) / n)


def pullback_homogeneous(p, q) -> np.ndarray:
    """(1, q) . T(1, -p): T_p^{-1}(q) up to the positive factor 1 + |p|^2_(+,-,-)."""
    p, q = as_points(p), as_points(q)
    x0 = 1.0
    x1, x2, x3 = -p[..., 0], -p[..., 1], -p[..., 2]
    q1, q2, q3 = q[..., 0], q[..., 1], q[..., 2]
    return np.stack(
        [
            x0 - q1 * x1 + q2 * x2 + q3 * x3,
            x1 + q1 * x0 + q2 * x3 - q3 * x2,
            x2 + q1 * x3 + q2 * x0 - q3 * x1,
            x3 - q1 * x2 + q2 * x1 + q3 * x0,
        ],
        axis=-1,
    )


def pullback(p, q) -> np.ndarray:
    """T_p^{-1}(q) in the chart; NaN where the image leaves the chart."""
    h = pullback_homogeneous(p, q)
    w = h[..., 0]
    ok = w > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(ok[..., None], h[..., 1:] / np.where(ok, w, 1.0)[..., None], np.nan)


def distance_masked(p, q) -> np.ndarray:
    p, q = as_points(p), as_points(q)
    d = distance_from_origin(pullback(p, q))
    # the matrix product rounds; coincident points are exactly 0 apart
    return np.where(np.all(p == q, axis=-1), 0.0, d)


def distance(p, q) -> np.ndarray:
    d = distance_masked(p, q)
    if np.any(np.isnan(d)):
        raise OutOfChartError("pulled-back point is outside the chart")
    return d


def apollonius_field(spec: ApolloniusSpec, bounds: Box = DEFAULT_BOUNDS) -> ScalarField:
    """sigma * d(P1, P) - d(P2, P); points whose pull-backs leave the chart are invalid."""
    p1, p2, sigma = spec.p1, spec.p2, spec.sigma

    def f(p):
        return sigma * distance_masked(p1, p) - distance_masked(p2, p)

    def valid(p):
        return np.isfinite(f(p))

    return ScalarField(f, bounds, valid=valid, name=f"slr-apollonius-sigma{sigma:g}")


@dataclass(frozen=True)
class SlrTriangle:
    """Triangular surface through E0, p2, p3: a Euclidean plane of the chart."""

    p2: np.ndarray
    p3: np.ndarray
    normal: np.ndarray

    def residual(self, p) -> np.ndarray:
        return as_points(p) @ self.normal

    def field(self, bounds: Box = DEFAULT_BOUNDS) -> ScalarField:
        def valid(p):
            p = as_points(p)
            return 1.0 + p[..., 0] ** 2 - p[..., 1] ** 2 - p[..., 2] ** 2 > 0

        return ScalarField(self.residual, bounds, valid=valid, name="slr-triangle")


def triangle_surface(p2, p3, *, tol: float = 1e-12) -> SlrTriangle:
    p2 = as_points(p2).reshape(3).copy()
    p3 = as_points(p3).reshape(3).copy()
    n = np.cross(p2, p3)
    norm = np.linalg.norm(n)
    if norm <= tol * max(np.linalg.norm(p2) * np.linalg.norm(p3), 1e-300):
        raise DegenerateTriangleError("E0, p2 and p3 are collinear in the model")
    return SlrTriangle(p2, p3, n / norm)
