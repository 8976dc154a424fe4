"""Sol geometry with the group law (a,b,c)(x,y,z) = (x + a e^-z, y + b e^z, z + c)."""

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
    DomainError,
    ScalarField,
    ZeroLengthError,
    as_points,
    exprel,
    z_over_expm1,
)

DEFAULT_BOUNDS = Box.cube(3.0)


@dataclass(frozen=True)
class SolCurveParams:
    phi: float
    theta: float
    t: float
    case: int = 1

    def direction(self) -> np.ndarray:
        ct = math.cos(self.theta)
        return np.array([ct * math.cos(self.phi), ct * math.sin(self.phi), math.sin(self.theta)])


def curve_point(phi, theta, t) -> np.ndarray:
    """Translation curve from the origin with unit initial tangent (phi, theta).

    Both the ``theta != 0`` and the ``theta = 0`` forms are covered by writing
    ``(e^{wt} - 1)/w`` as ``t * exprel(wt)``.
    """
    phi, theta, t = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (phi, theta, t)))
    u = np.cos(theta) * np.cos(phi)
    v = np.cos(theta) * np.sin(phi)
    w = np.sin(theta)
    return np.stack([u * t * exprel(-w * t), v * t * exprel(w * t), w * t], axis=-1)


def params_point(params: SolCurveParams, t: float | None = None) -> np.ndarray:
    return curve_point(params.phi, params.theta, params.t if t is None else t)


def tangent_functional(p) -> np.ndarray:
    """(xz/(1 - e^-z), yz/(e^z - 1), z): unit initial tangent times the distance."""
    p = as_points(p)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    return np.stack([x / exprel(-z), y / exprel(z), z], axis=-1)


def inverse(p) -> SolCurveParams:
    a, b, c = (float(v) for v in as_points(p).reshape(3))
    if a == 0.0 and b == 0.0 and c == 0.0:
        raise ZeroLengthError("no translation curve parameters for the origin itself")
    u, v, w = tangent_functional(np.array([a, b, c]))
    t = math.sqrt(u * u + v * v + w * w)
    if c == 0.0:
        # base plane: distances are Euclidean there
        return SolCurveParams(math.atan2(b, a), 0.0, math.hypot(a, b), case=3)
    if b != 0.0:
        # cot(phi) = -(a/b)(e^c - 1)/(e^-c - 1), cot(theta) = b/(sin(phi)(e^c - 1))
        phi = math.atan2(v, u)
        theta = math.atan2(c, math.hypot(u, v))
        return SolCurveParams(phi, theta, t, case=1)
    if a != 0.0:
        phi = 0.0 if a > 0 else math.pi
        theta = math.atan2(c, abs(u))
        return SolCurveParams(phi, theta, t, case=2)
    return SolCurveParams(0.0, math.copysign(math.pi / 2, c), abs(c), case=4)


def pullback(p, q) -> np.ndarray:
    """T_p^{-1}(q)."""
    p, q = as_points(p), as_points(q)
    pz = p[..., 2]
    return np.stack(
        [
            (q[..., 0] - p[..., 0]) * np.exp(pz),
            (q[..., 1] - p[..., 1]) * np.exp(-pz),
            q[..., 2] - pz,
        ],
        axis=-1,
    )


def distance_from_origin(p) -> np.ndarray:
    """|z|/|e^z - 1| * sqrt(x^2 e^{2z} + (e^z - 1)^2 + y^2), sqrt(x^2 + y^2) on z = 0."""
    p = as_points(p)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    ez = np.exp(z)
    return z_over_expm1(z) * np.sqrt(x * x * ez * ez + np.expm1(z) ** 2 + y * y)


def distance(p, q) -> np.ndarray:
    return distance_from_origin(pullback(p, q))


def translation(p) -> Collineation:
    x, y, z = as_points(p).reshape(3)
    return Collineation(
        [[1, x, y, z], [0, math.exp(-z), 0, 0], [0, 0, math.exp(z), 0], [0, 0, 0, 1]]
    )


def translation_inverse(p) -> Collineation:
    x, y, z = as_points(p).reshape(3)
    return Collineation(
        [
            [1, -x * math.exp(z), -y * math.exp(-z), -z],
            [0, math.exp(z), 0, 0],
            [0, 0, math.exp(-z), 0],
            [0, 0, 0, 1],
        ]
    )


def apollonius_branch_form(p, p2, sigma: float) -> np.ndarray:
    """sigma * d(E0, P) - d(P, P2) evaluated through the explicit branch table.

    The branches are selected by exact equality of z with 0 and with c (and by
    c = 0); every |w|/|e^w - 1| factor goes through ``z_over_expm1`` so the
    generic branch stays accurate right next to the special planes.
    """
    p = as_points(p)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    a, b, c = (float(v) for v in as_points(p2).reshape(3))
    ez = np.exp(z)

    rhs_generic = sigma * z_over_expm1(z) * np.sqrt(x * x * ez * ez + np.expm1(z) ** 2 + y * y)
    rhs_base = sigma * np.sqrt(x * x + y * y)

    if c != 0.0:
        ec = math.exp(c)
        # |c - z|/|e^c - e^z| = e^-z * (c - z)/(e^{c-z} - 1)
        lhs_generic = (
            np.exp(-z) * z_over_expm1(c - z)
            * np.sqrt((a - x) ** 2 * np.exp(2 * (c + z)) + (ec - ez) ** 2 + (b - y) ** 2)
        )
        lhs_on_c = np.sqrt((x - a) ** 2 * ec * ec + (y - b) ** 2 / (ec * ec))
        lhs_on_base = abs(c) / abs(ec - 1.0) * np.sqrt((a - x) ** 2 * ec * ec + (ec - 1.0) ** 2 + (b - y) ** 2)
        out = rhs_generic - lhs_generic
        out = np.where(z == c, rhs_generic - lhs_on_c, out)
        out = np.where(z == 0.0, rhs_base - lhs_on_base, out)
        return out

    lhs_generic = z_over_expm1(z) * np.sqrt((a - x) ** 2 * ez * ez + np.expm1(z) ** 2 + (b - y) ** 2)
    lhs_base = np.sqrt((x - a) ** 2 + (y - b) ** 2)
    return np.where(z == 0.0, rhs_base - lhs_base, rhs_generic - lhs_generic)


def apollonius_field(spec: ApolloniusSpec, bounds: Box = DEFAULT_BOUNDS) -> ScalarField:
    p1, p2, sigma = spec.p1, spec.p2, spec.sigma
    if np.all(p1 == 0.0):
        def f(p):
            return apollonius_branch_form(p, p2, sigma)
    else:
        def f(p):
            return sigma * distance(p1, p) - distance(p, p2)
    return ScalarField(f, bounds, name=f"sol-apollonius-sigma{sigma:g}")


@dataclass(frozen=True)
class SolTriangle:
    """Translation-like triangular surface of E0, P2 = (a,b,c), P3 = (d,e,f).

    ``z = log((ycoef * y - k) / (xcoef * x - k))`` on the set where numerator and
    denominator share a sign; the vertical line (x_star, y_star) lies on the
    surface for every z.
    """

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    @property
    def k(self) -> float:
        return self.a * self.e * math.exp(self.c) - self.b * self.d * math.exp(self.f)

    @property
    def xcoef(self) -> float:
        return self.e * math.expm1(self.c) - self.b * math.expm1(self.f)

    @property
    def ycoef(self) -> float:
        return self.d * math.exp(self.f) * math.expm1(self.c) - self.a * math.exp(self.c) * math.expm1(self.f)

    @property
    def x_star(self) -> float:
        return self.k / self.xcoef if self.xcoef != 0 else math.nan

    @property
    def y_star(self) -> float:
        return self.k / self.ycoef if self.ycoef != 0 else math.nan

    @property
    def p2(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c])

    @property
    def p3(self) -> np.ndarray:
        return np.array([self.d, self.e, self.f])

    def _num_den(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return self.ycoef * y - self.k, self.xcoef * x - self.k

    def in_domain(self, x, y) -> np.ndarray:
        num, den = self._num_den(x, y)
        return num * den > 0

    def explicit(self, x, y) -> np.ndarray:
        num, den = self._num_den(x, y)
        if np.any(~(num * den > 0)):
            raise DomainError("explicit triangular surface evaluated outside its domain")
        return np.log(num / den)

    def explicit_masked(self, x, y) -> np.ndarray:
        num, den = self._num_den(x, y)
        ok = num * den > 0
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(ok, np.log(np.where(ok, num / den, 1.0)), np.nan)

    def bracket(self, p) -> np.ndarray:
        """Second factor of the factored triple product; linear in x, y for fixed z."""
        p = as_points(p)
        x, y, z = p[..., 0], p[..., 1], p[..., 2]
        a, b, c, d, e, f = self.a, self.b, self.c, self.d, self.e, self.f
        ec, ef, ez = math.exp(c), math.exp(f), np.exp(z)
        return (
            np.expm1(z) * (b * d * ef - a * e * ec)
            + math.expm1(f) * (a * y * ec - b * x * ez)
            + math.expm1(c) * (e * x * ez - d * y * ef)
        )

    def prefactor(self, z) -> np.ndarray:
        """z(z-c)(z-f)/((1-e^-z)(e^z-e^c)(e^z-e^f)), with its finite limits at z in {0, c, f}."""
        z = np.asarray(z, dtype=float)
        return (
            (1.0 / exprel(-z))
            * (math.exp(-self.c) / exprel(z - self.c))
            * (math.exp(-self.f) / exprel(z - self.f))
        )

    def triple(self, p) -> np.ndarray:
        return triangle_triple_product(p, self.p2, self.p3)

    def residual(self, p) -> np.ndarray:
        """The prefactor never vanishes, so the bracket alone cuts out the surface."""
        return self.bracket(p)

    def field(self, bounds: Box = DEFAULT_BOUNDS) -> ScalarField:
        return ScalarField(self.triple, bounds, name="sol-triangle")

    def level_line(self, z: float) -> tuple[float, float, float]:
        """Coefficients (A, B, C) of the level set A x + B y + C = 0 at height z."""
        a, b, c, d, e, f = self.a, self.b, self.c, self.d, self.e, self.f
        ec, ef, ez = math.exp(c), math.exp(f), math.exp(z)
        A = math.expm1(c) * e * ez - math.expm1(f) * b * ez
        B = math.expm1(f) * a * ec - math.expm1(c) * d * ef
        C = math.expm1(z) * (b * d * ef - a * e * ec)
        return A, B, C


def triangle_triple_product(p, p2, p3) -> np.ndarray:
    p = as_points(p)
    t1 = tangent_functional(pullback(p, np.zeros(3)))
    t2 = tangent_functional(pullback(p, p2))
    t3 = tangent_functional(pullback(p, p3))
    return np.einsum("...i,...i->...", t1, np.cross(t2, t3))


def triangle_surface(p2, p3, *, tol: float = 1e-12) -> SolTriangle:
    p2 = as_points(p2).reshape(3)
    p3 = as_points(p3).reshape(3)
    t2, t3 = tangent_functional(p2), tangent_functional(p3)
    scale = max(np.linalg.norm(t2) * np.linalg.norm(t3), 1e-300)
    if np.linalg.norm(np.cross(t2, t3)) <= tol * scale:
        raise DegenerateTriangleError("vertices lie on a single translation curve")
    tri = SolTriangle(*(float(v) for v in p2), *(float(v) for v in p3))
    if abs(tri.xcoef) <= tol and abs(tri.ycoef) <= tol:
        raise DegenerateTriangleError("explicit form has vanishing x and y coefficients")
    return tri


def triangle_transitivity_check(p2, p3, p4, *, samples: int = 41, half_width: float = 3.0,
                                strict: bool = True) -> float:
    """Max |t_{abc,def}(x,y) - t_{abc,g h z4}(x,y)| over a grid where both are defined.

    With ``strict`` a ``p4`` that is not on the surface through E0, P2, P3 is a
    contract violation; ``strict=False`` returns the deviation anyway, which is
    how the sensitivity of the check itself is probed.
    """
    tri = triangle_surface(p2, p3)
    g, h, z4 = (float(v) for v in as_points(p4).reshape(3))
    if strict:
        if not tri.in_domain(g, h) or abs(float(tri.explicit(g, h)) - z4) > 1e-9:
            raise ContractViolation("p4 is not on the triangular surface")
    other = triangle_surface(p2, p4)
    s = np.linspace(-half_width, half_width, samples)
    X, Y = np.meshgrid(s, s, indexing="ij")
    ok = tri.in_domain(X, Y) & other.in_domain(X, Y)
    if not np.any(ok):
        raise ContractViolation("the two explicit forms share no sample point")
    dev = np.abs(tri.explicit(X[ok], Y[ok]) - other.explicit(X[ok], Y[ok]))
    return float(dev.max())
