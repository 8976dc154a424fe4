"""Property suites run by ``thurston check``: each check reports its max deviation and tolerance."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
from scipy.optimize import brentq

from . import figures, geometries, nil, oracles, product, slr, sol
from .core import ApolloniusSpec, Box, GeometryId, OrbitList, ScalarField, dv_membership
from .mesh import GridSpec, extract_isosurface

ROUNDTRIP_TOL = 1e-9
ODE_TOL = 1e-6
ODE_STEP = 1e-4
CLOSED_FORM_TOL = 1e-9
SHOOTING_TOL = 1e-5
APOLLONIUS_TOL = 1e-5
MIDPOINT_TOL = 1e-9
SURFACE_TOL = 1e-9
NONTRANSITIVE_MIN = 1e-6
FIBRE_TOL = 1e-9
MESH_TOL = 1e-5


@dataclass
class CheckResult:
    name: str
    value: float
    tol: float
    passed: bool
    seconds: float = 0.0
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.note})" if self.note else ""
        return f"[{status}] {self.name}: {self.value:.3e} (tol {self.tol:.0e}, {self.seconds:.1f}s){extra}"


def _at_most(name: str, value: float, tol: float, note: str = "") -> CheckResult:
    value = float(value)
    return CheckResult(name, value, tol, bool(value <= tol), note=note)


def _at_least(name: str, value: float, bound: float, note: str = "") -> CheckResult:
    value = float(value)
    return CheckResult(name, value, bound, bool(value > bound), note=note)


# -- curves --------------------------------------------------------------------------

def _random_directions(g: GeometryId, n: int, rng: np.random.Generator):
    a = rng.uniform(-math.pi, math.pi, n)
    b = rng.uniform(-1.4, 1.4, n)
    length = rng.uniform(0.1, 2.0, n)
    if g is GeometryId.SLR:
        # stay well inside the chart for fibre-like directions
        reach = 1.3 / np.sqrt(np.maximum(-np.cos(2 * b), 1e-12))
        length = np.minimum(length, reach)
    return geometries.unit_tangent(g, (a, b)), length


def ode_agreement(g, n: int = 100, seed: int = 0) -> CheckResult:
    """Closed-form endpoints against RK4 with arclength step ODE_STEP."""
    g = GeometryId.parse(g)
    rng = np.random.default_rng(seed)
    tangent, length = _random_directions(g, n, rng)
    # one batch over unit time; every curve then advances by at most ODE_STEP per step
    n_steps = int(math.ceil(length.max() / ODE_STEP))
    end = oracles.rk4(g, tangent * length[:, None], n_steps)
    closed = geometries.curve_from_tangent(g, tangent, length)
    dev = float(np.max(np.abs(end - closed)))
    return _at_most(f"ode-vs-closed-form[{g.value}]", dev, ODE_TOL, f"{n} curves")


def integrator_order(seed: int = 0) -> CheckResult:
    """Halving the step must shrink the error by at least 8 (fourth order).

    Nil curves are quadratic polynomials that RK4 integrates exactly, so only
    errors clearly above rounding enter the ratio.
    """
    rng = np.random.default_rng(seed)
    worst = math.inf
    for g in GeometryId:
        tangent, length = _random_directions(g, 20, rng)
        closed = geometries.curve_from_tangent(g, tangent, length)
        e1 = np.abs(oracles.rk4(g, tangent * length[:, None], 10) - closed).max(axis=1)
        e2 = np.abs(oracles.rk4(g, tangent * length[:, None], 20) - closed).max(axis=1)
        big = e1 > 1e-10
        if np.any(big):
            worst = min(worst, float(np.min(e1[big] / e2[big])))
    return _at_least("rk4-error-ratio-on-step-halving", worst, 8.0)


def product_planarity(seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    dev = 0.0
    for g in geometries.PRODUCTS:
        u = rng.uniform(-math.pi, math.pi, 1000)
        v = rng.uniform(-1.5, 1.5, 1000)
        tau = rng.uniform(0, 3, 1000)
        p = product.curve_point(g, u, v, tau)
        dev = max(dev, float(np.abs(np.sin(u) * p[:, 1] - np.cos(u) * p[:, 2]).max()))
    return _at_most("product-curve-planarity", dev, 1e-12)


def product_unit_speed(seed: int = 0) -> CheckResult:
    """Speed under (dt)^2 + base metric, from central differences of the closed form."""
    rng = np.random.default_rng(seed)
    dev = 0.0
    h = 1e-5
    for g in geometries.PRODUCTS:
        u = rng.uniform(-math.pi, math.pi, 200)
        v = rng.uniform(-1.5, 1.5, 200)
        tau = rng.uniform(0.1, 2.0, 200)
        plus, minus = product.curve_point(g, u, v, tau + h), product.curve_point(g, u, v, tau - h)
        (bp, lp), (bm, lm) = product.project_to_unit(g, plus), product.project_to_unit(g, minus)
        fibre = (lp - lm) / (2 * h)
        base = product.base_distance(g, bp, bm) / (2 * h)
        speed = np.sqrt(fibre**2 + base**2)
        dev = max(dev, float(np.abs(speed - 1.0).max()))
    return _at_most("product-curve-unit-speed", dev, 1e-6)


def product_tangent_consistency(seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    dev = 0.0
    for g in geometries.PRODUCTS:
        u = rng.uniform(-math.pi, math.pi, 1000)
        v = rng.uniform(-1.5, 1.5, 1000)
        tau = rng.uniform(0.05, 2.5, 1000)
        p = product.curve_point(g, u, v, tau)
        t = product.tangent_functional(g, p)
        t /= np.linalg.norm(t, axis=1, keepdims=True)
        expect = np.stack([np.sin(v), np.cos(v) * np.cos(u), np.cos(v) * np.sin(u)], axis=1)
        dev = max(dev, float(np.abs(t - expect).max()))
    return _at_most("product-tangent-vs-initial-direction", dev, 1e-9)


def slr_classes(seed: int = 0) -> CheckResult:
    """Homogeneous closed form against the homogeneous integrator, including outside the chart."""
    rng = np.random.default_rng(seed)
    lam = rng.uniform(-math.pi, math.pi, 60)
    alpha = np.concatenate([rng.uniform(-0.7, 0.7, 20), np.full(20, math.pi / 4), rng.uniform(0.9, 1.5, 20)])
    s = rng.uniform(0.1, 2.5, 60)
    w = slr._direction(lam, alpha) * s[:, None]
    h = oracles.slr_homogeneous_endpoint(w, 25000)
    closed = slr.curve_homogeneous(lam, alpha, s)
    return _at_most("slr-three-curve-classes", float(np.abs(h - closed).max()), ODE_TOL)


def suite_curves(seed: int = 0) -> Iterator[Callable[[], CheckResult]]:
    for g in GeometryId:
        yield lambda g=g: ode_agreement(g, seed=seed)
    yield lambda: slr_classes(seed)
    yield lambda: integrator_order(seed)
    yield lambda: product_planarity(seed)
    yield lambda: product_unit_speed(seed)
    yield lambda: product_tangent_consistency(seed)


# -- inverse problems and distances ---------------------------------------------------

def roundtrip(g, n: int = 10_000, seed: int = 0) -> CheckResult:
    g = GeometryId.parse(g)
    pts = geometries.random_points(g, n, np.random.default_rng(seed))
    dev = 0.0
    for p in pts:
        dev = max(dev, float(np.abs(geometries.forward(g, geometries.inverse(g, p)) - p).max()))
    return _at_most(f"forward-inverse-roundtrip[{g.value}]", dev, ROUNDTRIP_TOL, f"{n} points")


def closed_form_distance(g, n: int = 100, seed: int = 0) -> CheckResult:
    """Closed-form distance against the arclength returned by the inverse problem."""
    g = GeometryId.parse(g)
    pts = geometries.random_points(g, n, np.random.default_rng(seed + 1))
    if g is GeometryId.NIL:
        x, y, z = pts.T
        closed = np.sqrt(x * x + y * y + (z - x * y / 2) ** 2)
    elif g is GeometryId.SOL:
        x, y, z = pts.T
        ez = np.exp(z)
        closed = np.abs(z) / np.abs(np.expm1(z)) * np.sqrt(x * x * ez * ez + np.expm1(z) ** 2 + y * y)
    else:
        closed = geometries.distance_from_origin(g, pts)
    arclength = np.array([geometries.params_length(geometries.inverse(g, p)) for p in pts])
    return _at_most(f"distance-closed-form-vs-inverse[{g.value}]", float(np.abs(closed - arclength).max()),
                    CLOSED_FORM_TOL, f"{n} points")


def shooting_distance(g, n: int = 100, seed: int = 0) -> CheckResult:
    g = GeometryId.parse(g)
    pts = geometries.random_points(g, n, np.random.default_rng(seed + 2))
    try:
        shot = oracles.oracle_distance(g, pts)
    except oracles.UnreachableError as exc:
        return CheckResult(f"distance-vs-shooting[{g.value}]", math.inf, SHOOTING_TOL, False, note=str(exc))
    dev = float(np.abs(shot - geometries.distance_from_origin(g, pts)).max())
    return _at_most(f"distance-vs-shooting[{g.value}]", dev, SHOOTING_TOL, f"{n} points")


def distance_symmetry(seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed + 3)
    dev = 0.0
    for g in GeometryId:
        p = geometries.random_points(g, 300, rng)
        q = geometries.random_points(g, 300, rng)
        if g is GeometryId.SLR:
            d1, d2 = slr.distance_masked(p, q), slr.distance_masked(q, p)
            ok = np.isfinite(d1) & np.isfinite(d2)
            d1, d2 = d1[ok], d2[ok]
        else:
            d1, d2 = geometries.distance(g, p, q), geometries.distance(g, q, p)
        dev = max(dev, float(np.max(np.abs(d1 - d2) / np.maximum(1.0, d1))))
    return _at_most("distance-symmetry", dev, CLOSED_FORM_TOL)


def suite_inverse(seed: int = 0) -> Iterator[Callable[[], CheckResult]]:
    for g in GeometryId:
        yield lambda g=g: roundtrip(g, seed=seed)
    for g in GeometryId:
        yield lambda g=g: closed_form_distance(g, seed=seed)
    for g in GeometryId:
        yield lambda g=g: shooting_distance(g, seed=seed)
    yield lambda: distance_symmetry(seed)


# -- Apollonius surfaces ----------------------------------------------------------------

def apollonius_mesh_check(case: figures.ApolloniusCase, res: int = 128, samples: int = 1000,
                          seed: int = 0) -> CheckResult:
    t0 = time.perf_counter()
    mesh = figures.apollonius_mesh(case.geometry, case.p2, case.sigma, res=res)
    name = f"apollonius-mesh-residual[{case.key}:{case.geometry.value}]"
    if mesh.is_empty:
        return CheckResult(name, math.inf, APOLLONIUS_TOL, False, note="empty mesh")
    rng = np.random.default_rng(seed)
    idx = rng.choice(len(mesh.vertices), size=min(samples, len(mesh.vertices)), replace=False)
    spec = ApolloniusSpec(case.geometry.origin, np.array(case.p2), case.sigma)
    # recompute from the distances, independent of the stored residuals
    p = mesh.vertices[idx]
    dist = geometries.distance
    if case.geometry is GeometryId.SLR:
        dist = lambda g, a, b: slr.distance_masked(a, b)  # noqa: E731
    r = spec.sigma * dist(case.geometry, spec.p1, p) - dist(case.geometry, p, spec.p2)
    out = _at_most(name, float(np.max(np.abs(r))), APOLLONIUS_TOL,
                   f"{len(idx)} of {len(mesh.vertices)} vertices, {res}^3")
    out.seconds = time.perf_counter() - t0
    return out


def bisector_midpoint(seed: int = 0) -> CheckResult:
    """The curve midpoint of E0 and P2 is equidistant from both."""
    rng = np.random.default_rng(seed + 4)
    dev = 0.0
    for g in geometries.APOLLONIUS_GEOMETRIES:
        for p2 in geometries.random_points(g, 50, rng):
            params = geometries.inverse(g, p2)
            half = geometries.params_length(params) / 2
            if g is GeometryId.NIL:
                mid = nil.params_point(params, half)
            elif g is GeometryId.SOL:
                mid = sol.params_point(params, half)
            else:
                mid = slr.params_point(params, half)
            field = geometries.apollonius_field(g, ApolloniusSpec(g.origin, p2, 1.0))
            dev = max(dev, abs(float(field(mid))))
    return _at_most("bisector-midpoint-residual[nil,sol,slr]", dev, MIDPOINT_TOL)


def apollonius_closed_forms(seed: int = 0) -> CheckResult:
    """Written-out implicit equations against the pull-back-and-distance route."""
    rng = np.random.default_rng(seed + 5)
    dev = 0.0
    for sigma in (0.5, 1.0, 2.0):
        p2 = rng.uniform(-2, 2, 3)
        pts = rng.uniform(-3, 3, (500, 3))
        direct = sigma * nil.distance(np.zeros(3), pts) - nil.distance(pts, p2)
        dev = max(dev, float(np.abs(nil.apollonius_closed_form(pts, p2, sigma) - direct).max()))
        p2 = rng.uniform(-2, 2, 3)
        direct = sigma * sol.distance(np.zeros(3), pts) - sol.distance(pts, p2)
        dev = max(dev, float(np.abs(sol.apollonius_branch_form(pts, p2, sigma) - direct).max()))
    return _at_most("apollonius-closed-form-vs-distances[nil,sol]", dev, CLOSED_FORM_TOL)


def suite_apollonius(seed: int = 0, res: int = 128) -> Iterator[Callable[[], CheckResult]]:
    yield lambda: bisector_midpoint(seed)
    yield lambda: apollonius_closed_forms(seed)
    for case in figures.APOLLONIUS_CASES:
        yield lambda case=case: apollonius_mesh_check(case, res=res, seed=seed)


# -- triangular surfaces -----------------------------------------------------------------

def _normalized_triple(g: GeometryId, p, p2, p3) -> np.ndarray:
    p = np.atleast_2d(p)
    if g in geometries.PRODUCTS:
        t = [product.tangent_functional(g, product.pullback_points(g, p, v)) for v in (product.E0, p2, p3)]
    else:
        mod = nil if g is GeometryId.NIL else sol
        t = [mod.tangent_functional(mod.pullback(p, v)) for v in (np.zeros(3), p2, p3)]
    triple = np.einsum("...i,...i->...", t[0], np.cross(t[1], t[2]))
    scale = np.prod([np.linalg.norm(v, axis=-1) for v in t], axis=0)
    with np.errstate(all="ignore"):
        return np.where(scale > 0, triple / np.where(scale > 0, scale, 1.0), 0.0)


def triangle_vertices_on_surface() -> CheckResult:
    dev = 0.0
    for case in figures.TRIANGLE_CASES + (figures.TriangleCase("slr", GeometryId.SLR, (0.3, 0.5, 0.2),
                                                               (-0.4, 0.2, 0.6)),):
        tri = geometries.triangle_surface(case.geometry, case.p2, case.p3)
        verts = np.array([case.geometry.origin, case.p2, case.p3])
        dev = max(dev, float(np.abs(tri.residual(verts)).max()))
    return _at_most("triangle-vertices-on-surface[all five]", dev, SURFACE_TOL)


def sol_explicit_vs_triple(samples: int = 1000, seed: int = 0) -> CheckResult:
    case = figures.TRIANGLE_CASES[0]
    tri = sol.triangle_surface(case.p2, case.p3)
    rng = np.random.default_rng(seed + 6)
    xy = rng.uniform(-3, 3, (20 * samples, 2))
    z = tri.explicit_masked(xy[:, 0], xy[:, 1])
    keep = np.isfinite(z) & (np.abs(z) < 3)
    pts = np.column_stack([xy[keep], z[keep]])[:samples]
    dev = float(np.abs(_normalized_triple(GeometryId.SOL, pts, tri.p2, tri.p3)).max())
    return _at_most("sol-explicit-vs-triple-product", dev, SURFACE_TOL, f"{len(pts)} samples, normalized")


def sol_level_lines(seed: int = 0) -> CheckResult:
    """Points of the surface at one height are collinear."""
    case = figures.TRIANGLE_CASES[0]
    tri = sol.triangle_surface(case.p2, case.p3)
    rng = np.random.default_rng(seed + 7)
    dev = 0.0
    for z in rng.uniform(-2, 2, 20):
        A, B, C = tri.level_line(z)
        xs = rng.uniform(-3, 3, 3)
        ys = -(A * xs + C) / B
        # compare with the explicit form, then test collinearity of the three points
        zz = tri.explicit_masked(xs, ys)
        ok = np.isfinite(zz)
        dev = max(dev, float(np.abs(zz[ok] - z).max()) if ok.any() else 0.0)
        pts = np.column_stack([xs, ys])
        e1, e2 = pts[1] - pts[0], pts[2] - pts[0]
        area = abs(e1[0] * e2[1] - e1[1] * e2[0])
        dev = max(dev, float(area / max(1.0, np.linalg.norm(pts[1] - pts[0]) * np.linalg.norm(pts[2] - pts[0]))))
    return _at_most("sol-level-sets-are-lines", dev, SURFACE_TOL)


def nil_second_differences() -> CheckResult:
    """Solve the triple product for z on a grid; z_xx = z_yy = 0 and z_xy = 1/2."""
    dev = 0.0
    for case in figures.TRIANGLE_CASES[1:3]:
        h = 0.5
        xs = np.arange(-2, 2.01, h)
        X, Y = np.meshgrid(xs, xs, indexing="ij")
        # the triple product is affine in z, so two evaluations fix its root
        t0 = nil.triangle_triple_product(np.stack([X, Y, 0 * X], -1), case.p2, case.p3)
        t1 = nil.triangle_triple_product(np.stack([X, Y, 0 * X + 1], -1), case.p2, case.p3)
        Z = -t0 / (t1 - t0)
        zxx = (Z[2:, 1:-1] - 2 * Z[1:-1, 1:-1] + Z[:-2, 1:-1]) / h**2
        zyy = (Z[1:-1, 2:] - 2 * Z[1:-1, 1:-1] + Z[1:-1, :-2]) / h**2
        zxy = (Z[2:, 2:] - Z[2:, :-2] - Z[:-2, 2:] + Z[:-2, :-2]) / (4 * h * h)
        dev = max(dev, float(np.abs(zxx).max()), float(np.abs(zyy).max()), float(np.abs(zxy - 0.5).max()))
    return _at_most("nil-hyperbolic-paraboloid-second-differences", dev, SURFACE_TOL)


def transitivity(seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed + 8)
    dev = 0.0
    for case in figures.TRIANGLE_CASES[:3]:
        g = case.geometry
        tri = geometries.triangle_surface(g, case.p2, case.p3)
        for _ in range(10):
            if g is GeometryId.SOL:
                while True:
                    x, y = rng.uniform(-3, 3, 2)
                    if tri.in_domain(x, y):
                        break
                p4 = np.array([x, y, float(tri.explicit(x, y))])
                dev = max(dev, sol.triangle_transitivity_check(case.p2, case.p3, p4))
            else:
                x, y = rng.uniform(-3, 3, 2)
                p4 = np.array([x, y, float(tri.explicit(x, y))])
                dev = max(dev, nil.triangle_transitivity_check(case.p2, case.p3, p4))
    return _at_most("transitivity[nil,sol]", dev, SURFACE_TOL)


def nontransitivity(case: figures.TriangleCase, seed: int = 0) -> CheckResult:
    d = product.nontransitivity_demo(case.geometry, case.p2, case.p3, seed=seed)
    return _at_least(f"non-transitivity[{case.key}:{case.geometry.value}]", d, NONTRANSITIVE_MIN)


def fibre_property(n: int = 1000, seed: int = 0) -> CheckResult:
    """One root per fibre, located by bracketing, matching the weighted-average formula."""
    rng = np.random.default_rng(seed + 9)
    dev = 0.0
    roots_seen = set()
    for case in figures.TRIANGLE_CASES[3:]:
        g = case.geometry
        tri = product.triangle_surface(g, case.p2, case.p3)
        if g is GeometryId.S2XR:
            dirs = rng.normal(size=(n, 3))
            dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        else:
            dirs = product.unit_surface_point(g, rng.uniform(0, 2.5, n), rng.uniform(-math.pi, math.pi, n))
        closed = product.fibre_solve(g, tri.p2, tri.p3, dirs)
        logs = np.linspace(-400, 400, 1601)
        for d, lnp in zip(dirs, closed):
            vals = product.triangle_residual_log(g, d, logs, tri.p2, tri.p3)
            changes = int(np.count_nonzero(np.sign(vals[1:]) != np.sign(vals[:-1])))
            roots_seen.add(changes)
            if changes != 1 or not np.isfinite(lnp):
                dev = math.inf
                continue
            k = int(np.flatnonzero(np.sign(vals[1:]) != np.sign(vals[:-1]))[0])
            root = brentq(lambda s: float(product.triangle_residual_log(g, d, s, tri.p2, tri.p3)),
                          logs[k], logs[k + 1], xtol=1e-14, rtol=4 * np.finfo(float).eps)
            dev = max(dev, abs(root - lnp))
    return _at_most("product-fibre-unique-root-vs-formula", dev, FIBRE_TOL,
                    f"{n} directions per geometry, sign changes seen {sorted(roots_seen)}")


def product_edges_on_surface() -> CheckResult:
    dev = 0.0
    for case in figures.TRIANGLE_CASES[3:]:
        g = case.geometry
        tri = product.triangle_surface(g, case.p2, case.p3)
        for a, b in ((product.E0, tri.p2), (product.E0, tri.p3), (tri.p2, tri.p3)):
            dev = max(dev, float(np.abs(tri.residual(product.curve_between(g, a, b))).max()))
    return _at_most("product-triangle-edges-on-surface", dev, SURFACE_TOL)


def triangle_mesh_check(case: figures.TriangleCase, res: int = 128) -> CheckResult:
    t0 = time.perf_counter()
    mesh = figures.triangle_mesh(case.geometry, case.p2, case.p3, res=res)
    name = f"triangle-mesh-residual[{case.key}:{case.geometry.value}]"
    if mesh.is_empty:
        return CheckResult(name, math.inf, MESH_TOL, False, note="empty mesh")
    out = _at_most(name, mesh.max_residual, MESH_TOL, f"{len(mesh.vertices)} vertices, {res}^3")
    out.seconds = time.perf_counter() - t0
    return out


def suite_triangles(seed: int = 0, res: int = 128) -> Iterator[Callable[[], CheckResult]]:
    yield triangle_vertices_on_surface
    yield lambda: sol_explicit_vs_triple(seed=seed)
    yield lambda: sol_level_lines(seed)
    yield nil_second_differences
    yield lambda: transitivity(seed)
    for case in figures.TRIANGLE_CASES[3:]:
        yield lambda case=case: nontransitivity(case, seed)
    yield lambda: fibre_property(seed=seed)
    yield product_edges_on_surface
    for case in figures.TRIANGLE_CASES:
        yield lambda case=case: triangle_mesh_check(case, res=res)


# -- mesh plumbing and D-V cells ------------------------------------------------------------

def sphere_sanity() -> CheckResult:
    field = ScalarField(lambda p: np.sum(p * p, axis=-1) - 1.0, Box.cube(2.0), name="sphere")
    grid = GridSpec(field.bounds, (64, 64, 64))
    mesh = extract_isosurface(field, grid)
    dev = float(np.abs(np.linalg.norm(mesh.vertices, axis=1) - 1.0).max())
    return _at_most("mesh-sphere-radius", dev, 2 * float(grid.spacing.max()))


def dv_sanity() -> CheckResult:
    """Kernel at the origin with its images under x-translations by +-2: the y axis is inside."""
    ok = True
    for g in (GeometryId.NIL, GeometryId.SOL):
        orbit = OrbitList(np.zeros(3), (np.array([2.0, 0, 0]), np.array([-2.0, 0, 0])))
        ok &= dv_membership(np.array([0.0, 1.0, 0.0]), orbit, g)
        ok &= not dv_membership(np.array([1.8, 0.0, 0.0]), orbit, g)
    return CheckResult("dirichlet-voronoi-membership", 0.0 if ok else 1.0, 0.0, ok)


def suite_misc(seed: int = 0) -> Iterator[Callable[[], CheckResult]]:
    yield sphere_sanity
    yield dv_sanity


SUITES = {
    "curves": suite_curves,
    "inverse": suite_inverse,
    "apollonius": suite_apollonius,
    "triangles": suite_triangles,
}


def run(suite: str, seed: int = 0, res: int = 128, echo: Callable[[str], None] | None = print):
    """Run a suite (or ``all``); returns the list of results."""
    names = list(SUITES) if suite == "all" else [suite]
    results = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
        if echo:
            echo(f"== suite {name}")
        factory = SUITES[name]
        checks = factory(seed, res) if name in ("apollonius", "triangles") else factory(seed)
        for check in checks:
            t0 = time.perf_counter()
            try:
                result = check()
            except Exception as exc:  # a crash is a failure with its message
                result = CheckResult(getattr(check, "__name__", "check"), math.inf, 0.0, False,
                                     note=f"{type(exc).__name__}: {exc}")
            if not result.seconds:
                result.seconds = time.perf_counter() - t0
            results.append(result)
            if echo:
                echo(result.line())
    if suite == "all":
        if echo:
            echo("== suite misc")
        for check in suite_misc(seed):
            result = check()
            results.append(result)
            if echo:
                echo(result.line())
    return results
