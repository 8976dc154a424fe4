"""Independent checks: RK4 integration of the translation-curve systems and a shooting solver.

Nothing here uses the closed-form curves; the right-hand sides are the
defining first-order systems, so agreement with the closed forms is evidence
rather than tautology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from . import product
from .core import ContractViolation, GeometryError, GeometryId, as_points

MAX_STEPS = 10**7


class UnreachableError(GeometryError):
    """Shooting found no direction whose endpoint lands on the target."""


@dataclass(frozen=True)
class OdeSpec:
    geometry: GeometryId
    tangent: np.ndarray
    step: float = 1e-4
    length: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "geometry", GeometryId.parse(self.geometry))
        t = as_points(self.tangent)
        object.__setattr__(self, "tangent", t)
        if not (0 < self.step <= 1e-3):
            raise ContractViolation(f"step must lie in (0, 1e-3], got {self.step}")
        if not self.length > 0:
            raise ContractViolation("length must be positive")
        if not np.allclose(np.linalg.norm(t, axis=-1), 1.0, atol=1e-12):
            raise ContractViolation("initial tangent must have unit norm")

    @property
    def steps(self) -> int:
        return int(math.ceil(self.length / self.step - 1e-9))


# -- right-hand sides; ``w`` is the initial tangent, state carries the point ----

def _rhs_nil(state, w):
    x = state[..., 0]
    return np.stack([w[..., 0], w[..., 1], w[..., 2] + x * w[..., 1]], axis=-1)


def _rhs_sol(state, w):
    z = state[..., 2]
    return np.stack([w[..., 0] * np.exp(-z), w[..., 1] * np.exp(z), w[..., 2]], axis=-1)


def _rhs_slr(state, w):
    # homogeneous state C; C' = (0, w) . T(C), written out row by row
    x0, x1, x2, x3 = (state[..., i] for i in range(4))
    a, b, c = w[..., 0], w[..., 1], w[..., 2]
    return np.stack(
        [
            -a * x1 + b * x2 + c * x3,
            a * x0 + b * x3 - c * x2,
            a * x3 + b * x0 - c * x1,
            -a * x2 + b * x1 + c * x0,
        ],
        axis=-1,
    )


def _rhs_product(g):
    # the pull-back block is |p|^-1 times an isometry of the ambient form J,
    # so its inverse is |p|^2 J M^T J
    sign = 1.0 if g is GeometryId.S2XR else -1.0
    flip = np.array([1.0, sign, sign])

    def rhs(state, w):
        block = product.pullback_block(g, state)
        n2 = product.norm2(g, state)
        tw = np.einsum("...j,...ij->...i", w * flip, block)
        return n2[..., None] * tw * flip

    return rhs


def _setup(g: GeometryId, n_shape):
    if g is GeometryId.NIL:
        return np.zeros(n_shape + (3,)), _rhs_nil
    if g is GeometryId.SOL:
        return np.zeros(n_shape + (3,)), _rhs_sol
    if g is GeometryId.SLR:
        state = np.zeros(n_shape + (4,))
        state[..., 0] = 1.0
        return state, _rhs_slr
    state = np.zeros(n_shape + (3,))
    state[..., 0] = 1.0
    return state, _rhs_product(g)


def _finish(g: GeometryId, state):
    if g is GeometryId.SLR:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(state[..., :1] > 0, state[..., 1:] / state[..., :1], np.nan)
    return state


def rk4(g: GeometryId, w, n_steps: int, *, record_every: int = 0, raw: bool = False):
    """Integrate the system with initial tangent ``w`` (any length) over unit time.

    ``w`` may be batched as (..., 3). Returns the endpoint, or with
    ``record_every`` the list of recorded points including the start; ``raw``
    skips the conversion of homogeneous SLR states to the chart.
    """
    g = GeometryId.parse(g)
    if n_steps > MAX_STEPS:
        raise ContractViolation(f"{n_steps} steps exceeds the limit of {MAX_STEPS}")
    w = as_points(w)
    state, rhs = _setup(g, w.shape[:-1])
    h = 1.0 / n_steps
    frames = [_finish(g, state)] if record_every else None
    for i in range(n_steps):
        k1 = rhs(state, w)
        k2 = rhs(state + 0.5 * h * k1, w)
        k3 = rhs(state + 0.5 * h * k2, w)
        k4 = rhs(state + h * k3, w)
        state = state + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if record_every and (i + 1) % record_every == 0:
            frames.append(_finish(g, state))
    if record_every:
        return frames
    return state if raw else _finish(g, state)


def integrate_translation_curve(spec: OdeSpec, *, samples: int = 0) -> np.ndarray:
    """Endpoint (or ``samples`` + 1 polyline points) of the curve described by ``spec``."""
    n = spec.steps
    if n > MAX_STEPS:
        raise ContractViolation(f"{n} steps exceeds the limit of {MAX_STEPS}")
    w = spec.tangent * spec.length
    if samples:
        every = max(1, n // samples)
        return np.stack(rk4(spec.geometry, w, n, record_every=every), axis=-2)
    return rk4(spec.geometry, w, n)


# -- shooting --------------------------------------------------------------------

def _direction_bank(g: GeometryId, n_a: int = 64, n_b: int = 32) -> np.ndarray:
    a = np.linspace(-math.pi, math.pi, n_a, endpoint=False)
    b = np.linspace(-math.pi / 2, math.pi / 2, n_b + 2)[1:-1]
    A, B = np.meshgrid(a, b, indexing="ij")
    from .geometries import unit_tangent

    return unit_tangent(g, (A.ravel(), B.ravel()))


def _bank(g: GeometryId, max_length: float, n_times: int = 48, n_steps: int = 400):
    """Samples along a fan of trajectories, cut where curves stop being shortest.

    SLR curves are dropped once they have left the chart (they come back
    projectively); S2xR curves once their base arc exceeds pi.
    """
    dirs = _direction_bank(g)
    every = n_steps // n_times
    frames = np.stack(rk4(g, dirs * max_length, n_steps, record_every=every))
    times = np.arange(len(frames)) * every / n_steps
    ws = times[:, None, None] * max_length * dirs[None]
    ok = np.logical_and.accumulate(np.all(np.isfinite(frames), axis=-1), axis=0)
    if g is GeometryId.S2XR:
        ok &= np.hypot(ws[..., 1], ws[..., 2]) < math.pi
    ok &= np.linalg.norm(ws, axis=-1) > 0
    return cKDTree(frames[ok]), ws[ok]


def shoot(g, targets, *, max_length: float = 6.0, n_steps: int = 2000, iterations: int = 30,
          tol: float = 1e-6) -> np.ndarray:
    """Initial velocities w (|w| = curve length) whose unit-time endpoints hit ``targets``.

    A trajectory bank over a 64 x 32 direction grid gives the starting guess;
    Newton's method with a forward-difference Jacobian then refines every
    target at once. Targets that do not converge raise UnreachableError.
    """
    g = GeometryId.parse(g)
    targets = np.atleast_2d(as_points(targets))
    tree, ws = _bank(g, max_length)
    _, idx = tree.query(targets)
    w = ws[idx].copy()
    eps = 1e-7
    for _ in range(iterations):
        batch = np.concatenate([w[:, None, :], w[:, None, :] + eps * np.eye(3)[None]], axis=1)
        ends = rk4(g, batch, n_steps)
        f0 = ends[:, 0] - targets
        err = np.linalg.norm(f0, axis=1)
        if np.all(err < tol * 1e-3):
            break
        jac = (ends[:, 1:] - ends[:, :1]).transpose(0, 2, 1) / eps
        good = np.all(np.isfinite(jac), axis=(1, 2)) & np.all(np.isfinite(f0), axis=1)
        delta = np.zeros_like(w)
        if np.any(good):
            delta[good] = np.linalg.solve(jac[good], f0[good][..., None])[..., 0]
        # damp long steps so the iteration stays inside the chart
        scale = np.minimum(1.0, 0.5 * np.maximum(np.linalg.norm(w, axis=1), 0.1)
                           / np.maximum(np.linalg.norm(delta, axis=1), 1e-300))
        w = w - scale[:, None] * delta
    err = np.linalg.norm(rk4(g, w, n_steps) - targets, axis=1)
    if not np.all(err < tol):
        bad = np.flatnonzero(~(err < tol))
        raise UnreachableError(f"no direction reaches targets {bad.tolist()} (endpoint error {err[bad].max():.3g})")
    return w


def oracle_distance(g, p, **kwargs) -> np.ndarray:
    """Curve length found by shooting from the origin; vectorized over ``p``."""
    g = GeometryId.parse(g)
    p = as_points(p)
    single = p.ndim == 1
    w = shoot(g, p.reshape(-1, 3), **kwargs)
    d = np.linalg.norm(w, axis=1)
    return float(d[0]) if single else d


def slr_homogeneous_endpoint(w, n_steps: int) -> np.ndarray:
    """Homogeneous SLR endpoint, usable after the curve has left the chart."""
    return rk4(GeometryId.SLR, w, n_steps, raw=True)


__all__ = [
    "MAX_STEPS",
    "OdeSpec",
    "UnreachableError",
    "integrate_translation_curve",
    "oracle_distance",
    "rk4",
    "shoot",
    "slr_homogeneous_endpoint",
]
