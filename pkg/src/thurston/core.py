"""Shared model-level types for the projective models of the Thurston geometries.

Points are handled in the inhomogeneous chart: a point is the homogeneous
row vector ``(1, x, y, z)`` and is stored as a float array ``[x, y, z]``.
Every function that works on points accepts arrays of shape ``(..., 3)``
so that whole sampling grids can be pushed through at once.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

EXACT_TOL = 1e-12
ROUNDTRIP_TOL = 1e-9
SINGULAR_TOL = 1e-14


class GeometryError(ValueError):
    """Base class for every error raised by the geometry kernel."""


class SingularMapError(GeometryError):
    pass


class ZeroLengthError(GeometryError):
    """The inverse problem was asked for the curve from the origin to itself."""


class OutOfChartError(GeometryError):
    pass


class DegenerateTriangleError(GeometryError):
    pass


class DomainError(GeometryError):
    pass


class ContractViolation(GeometryError):
    pass


class GeometryId(str, enum.Enum):
    NIL = "nil"
    SOL = "sol"
    SLR = "slr"
    S2XR = "s2xr"
    H2XR = "h2xr"

    @classmethod
    def parse(cls, value: "str | GeometryId") -> "GeometryId":
        if isinstance(value, GeometryId):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            names = ", ".join(g.value for g in cls)
            raise GeometryError(f"unknown geometry {value!r} (expected one of {names})") from None

    @property
    def origin(self) -> np.ndarray:
        """The model origin: E0 = (1,0,0,0), or (1,1,0,0) for the product geometries."""
        if self in (GeometryId.S2XR, GeometryId.H2XR):
            return np.array([1.0, 0.0, 0.0])
        return np.zeros(3)


def as_points(p) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if arr.shape[-1] != 3:
        raise GeometryError(f"points must have 3 inhomogeneous coordinates, got shape {arr.shape}")
    return arr


def is_valid(g: GeometryId, p) -> np.ndarray:
    """Vectorized model-interior predicate for ``g``."""
    p = as_points(p)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    finite = np.all(np.isfinite(p), axis=-1)
    if g is GeometryId.H2XR:
        return finite & (x > 0) & (x * x - y * y - z * z > 0)
    if g is GeometryId.S2XR:
        return finite & (x * x + y * y + z * z > 0)
    if g is GeometryId.SLR:
        # interior of the one-sheeted hyperboloid solid, x^0 = 1
        return finite & (1.0 + x * x - y * y - z * z > 0)
    return finite


def check_point(g: GeometryId, p) -> np.ndarray:
    p = as_points(p)
    if not np.all(is_valid(g, p)):
        raise GeometryError(f"point {p.tolist()} is not a valid {g.value} point")
    return p


def to_homogeneous(p) -> np.ndarray:
    p = as_points(p)
    ones = np.ones(p.shape[:-1] + (1,))
    return np.concatenate([ones, p], axis=-1)


def from_homogeneous(h, *, tol: float = SINGULAR_TOL) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    w = h[..., 0]
    if np.any(np.abs(w) < tol):
        raise SingularMapError("image has vanishing 0th homogeneous coordinate")
    return h[..., 1:] / w[..., None]


@dataclass(frozen=True)
class Collineation:
    """A projective collineation acting on row vectors by right multiplication."""

    m: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=float)
        if m.shape != (4, 4):
            raise GeometryError(f"collineation matrix must be 4x4, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @classmethod
    def identity(cls) -> "Collineation":
        return cls(np.eye(4))

    @classmethod
    def from_row_major(cls, values: Sequence[float]) -> "Collineation":
        values = list(values)
        if len(values) != 16:
            raise GeometryError("a row-major collineation needs exactly 16 entries")
        return cls(np.reshape(values, (4, 4)))

    def to_row_major(self) -> list[float]:
        return [float(v) for v in self.m.ravel()]

    def apply(self, p) -> np.ndarray:
        return apply(self, p)

    def inverse(self) -> "Collineation":
        if abs(np.linalg.det(self.m)) < SINGULAR_TOL:
            raise SingularMapError("collineation is not invertible")
        return Collineation(np.linalg.inv(self.m))

    def __matmul__(self, other: "Collineation") -> "Collineation":
        return compose(self, other)


def apply(c: Collineation, p) -> np.ndarray:
    """Image of ``p`` under ``c``, renormalized so the 0th coordinate is 1."""
    return from_homogeneous(to_homogeneous(p) @ c.m)


def compose(c1: Collineation, c2: Collineation) -> Collineation:
    """The collineation that applies ``c1`` first and then ``c2``."""
    return Collineation(c1.m @ c2.m)


@dataclass(frozen=True)
class Box:
    xmin: float
    xmax: float
    ymin: float
    ymax: float
    zmin: float
    zmax: float

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax and self.zmin < self.zmax):
            raise GeometryError(f"degenerate bounding box {self}")

    @classmethod
    def cube(cls, half: float) -> "Box":
        return cls(-half, half, -half, half, -half, half)

    @classmethod
    def parse(cls, text: str) -> "Box":
        parts = [float(v) for v in text.split(",")]
        if len(parts) != 6:
            raise GeometryError("bounds need six numbers: xmin,xmax,ymin,ymax,zmin,zmax")
        return cls(*parts)

    @property
    def lo(self) -> np.ndarray:
        return np.array([self.xmin, self.ymin, self.zmin])

    @property
    def hi(self) -> np.ndarray:
        return np.array([self.xmax, self.ymax, self.zmax])

    def contains(self, p, slack: float = 0.0) -> np.ndarray:
        p = as_points(p)
        return np.all((p >= self.lo - slack) & (p <= self.hi + slack), axis=-1)


def _always_valid(p) -> np.ndarray:
    return np.ones(np.shape(p)[:-1], dtype=bool)


@dataclass(frozen=True)
class ScalarField:
    """A sampled implicit surface: the zero set of ``eval`` on the valid part of ``bounds``."""

    eval: Callable[[np.ndarray], np.ndarray]
    bounds: Box
    valid: Callable[[np.ndarray], np.ndarray] = _always_valid
    name: str = ""

    def __call__(self, p) -> np.ndarray:
        return self.eval(as_points(p))


@dataclass
class TriangleMesh:
    vertices: np.ndarray
    faces: np.ndarray
    residuals: np.ndarray
    name: str = ""
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.faces = np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)
        self.residuals = np.asarray(self.residuals, dtype=float).reshape(-1)
        if len(self.residuals) != len(self.vertices):
            raise ContractViolation("one residual per vertex is required")
        if len(self.faces) and (self.faces.min() < 0 or self.faces.max() >= len(self.vertices)):
            raise ContractViolation("face index out of range")

    @classmethod
    def empty(cls, name: str = "") -> "TriangleMesh":
        return cls(np.zeros((0, 3)), np.zeros((0, 3), dtype=np.int64), np.zeros(0), name=name)

    @property
    def is_empty(self) -> bool:
        return len(self.faces) == 0

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residuals))) if len(self.residuals) else 0.0


@dataclass(frozen=True)
class ApolloniusSpec:
    """Two foci and the distance ratio; ``sigma = 1`` is the bisector."""

    p1: np.ndarray
    p2: np.ndarray
    sigma: float = 1.0

    def __post_init__(self):
        p1 = as_points(self.p1).reshape(3)
        p2 = as_points(self.p2).reshape(3)
        if not self.sigma > 0:
            raise ContractViolation(f"sigma must be positive, got {self.sigma}")
        if np.array_equal(p1, p2):
            raise ContractViolation("Apollonius foci must differ")
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)
        object.__setattr__(self, "sigma", float(self.sigma))


@dataclass(frozen=True)
class OrbitList:
    """Kernel point plus an explicit finite list of its images under a group."""

    kernel: np.ndarray
    images: tuple

    def __post_init__(self):
        kernel = as_points(self.kernel).reshape(3)
        images = tuple(as_points(im).reshape(3) for im in self.images)
        if not images:
            raise ContractViolation("orbit list needs at least one image")
        if not any(np.array_equal(kernel, im) for im in images):
            images = (kernel,) + images
        object.__setattr__(self, "kernel", kernel)
        object.__setattr__(self, "images", images)


def dv_membership(q, orbit: OrbitList, g: GeometryId) -> bool:
    """Whether ``q`` lies in the Dirichlet-Voronoi cell of ``orbit.kernel``.

    Only the explicitly listed images are compared against; no group is
    enumerated.
    """
    return dv_nearest(q, orbit, g)[0]


def dv_nearest(q, orbit: OrbitList, g: GeometryId) -> tuple[bool, int]:
    """Membership verdict and the index of the image closest to ``q``."""
    from .geometries import distance

    g = GeometryId.parse(g)
    q = check_point(g, q)
    d_kernel = distance(g, orbit.kernel, q)
    dists = [distance(g, im, q) for im in orbit.images]
    inside = all(d_kernel <= d + EXACT_TOL for d in dists)
    return inside, int(np.argmin(dists))


# -- removable-singularity helpers ---------------------------------------------

def exprel(z):
    """(e^z - 1)/z, continuous through z = 0."""
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < 1e-5
    zs = np.where(small, 1.0, z)
    series = 1.0 + z / 2.0 + z * z / 6.0 + z**3 / 24.0
    return np.where(small, series, np.expm1(zs) / zs)


def z_over_expm1(z):
    """z/(e^z - 1), extended by 1 at z = 0."""
    return 1.0 / exprel(z)
