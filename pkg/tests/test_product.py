import math

import numpy as np
import pytest

from thurston import product
from thurston.core import DegenerateTriangleError, GeometryId, apply

S2, H2 = GeometryId.S2XR, GeometryId.H2XR
BOTH = pytest.mark.parametrize("g", [S2, H2], ids=["s2xr", "h2xr"])
E = math.e
FIG9 = ((0.0, -2.0, 2.0), (-2.0, -1.0, -2.0))
FIG10 = ((3.0, 1.0, 1.0), (1.9, -1.0, 1.2))


def _point(g, rng, n):
    if g is S2:
        d = rng.normal(size=(n, 3))
        d = d[d[:, 0] > -0.9]
        d /= np.linalg.norm(d, axis=1, keepdims=True)
    else:
        d = product.unit_surface_point(g, rng.uniform(0, 1.5, n), rng.uniform(-math.pi, math.pi, n))
    return d * np.exp(rng.uniform(-1, 1, len(d)))[:, None]


@BOTH
def test_curve_examples(g):
    np.testing.assert_allclose(product.curve_point(g, 0.4, math.pi / 2, 1.0), [E, 0, 0], atol=1e-15)
    s = 0.8
    expected = [math.cos(s), math.sin(s), 0] if g is S2 else [math.cosh(s), math.sinh(s), 0]
    np.testing.assert_allclose(product.curve_point(g, 0.0, 0.0, s), expected, atol=1e-15)


@BOTH
def test_curves_are_planar(g, rng):
    u, v = rng.uniform(-math.pi, math.pi), rng.uniform(-1.5, 1.5)
    pts = product.curve_point(g, u, v, np.linspace(0, 2.5, 50))
    np.testing.assert_allclose(math.sin(u) * pts[:, 1] - math.cos(u) * pts[:, 2], 0, atol=1e-12)


@BOTH
def test_pullback_examples(g, rng):
    np.testing.assert_allclose(product.pullback(g, [1.0, 0.0, 0.0]).m, np.eye(4), atol=1e-15)
    for p in _point(g, rng, 20):
        np.testing.assert_allclose(apply(product.pullback(g, p), p), [1, 0, 0], atol=1e-12)
        np.testing.assert_allclose(product.pullback(g, p).m, product.pullback_printed(g, p), atol=1e-12)


@BOTH
def test_pullback_on_the_fibre_axis(g):
    c = product.pullback(g, [2.0, 0.0, 0.0])
    np.testing.assert_allclose(c.m, np.diag([1, 0.5, 0.5, 0.5]))
    if g is S2:
        np.testing.assert_allclose(apply(product.pullback(g, [-2.0, 0.0, 0.0]), [-2.0, 0.0, 0.0]), [1, 0, 0])


@BOTH
def test_tangent_examples(g):
    np.testing.assert_allclose(product.tangent_functional(g, [1.0, 0.0, 0.0]), 0, atol=1e-15)
    np.testing.assert_allclose(product.tangent_functional(g, [E, 0.0, 0.0]), [1, 0, 0], atol=1e-15)
    if g is S2:
        for s in (0.1, 1.0, 3.0):
            got = product.tangent_functional(g, [math.cos(s), math.sin(s), 0.0])
            np.testing.assert_allclose(got, [0, s, 0], atol=1e-12)


@BOTH
def test_tangent_matches_printed(g, rng):
    pts = _point(g, rng, 50)
    np.testing.assert_allclose(product.tangent_functional(g, pts),
                               product.tangent_functional_printed(g, pts), atol=1e-10)


@BOTH
def test_inverse_round_trip(g, rng):
    for p in _point(g, rng, 30):
        prm = product.inverse(g, p)
        np.testing.assert_allclose(product.params_point(g, prm), p, atol=1e-10)


def test_distance_examples():
    for g in (S2, H2):
        assert math.isclose(float(product.distance(g, [1.0, 0, 0], [E, 0, 0])), 1.0)
    assert math.isclose(float(product.distance(S2, [1.0, 0, 0], [math.cos(1), math.sin(1), 0])), 1.0)
    p = np.array([0.3, -0.7, 0.4])
    assert float(product.distance(S2, p, p)) == 0.0


@BOTH
def test_distance_symmetric(g, rng):
    p, q = _point(g, rng, 40)[:20], _point(g, rng, 40)[:20]
    np.testing.assert_allclose(product.distance(g, p, q), product.distance(g, q, p), rtol=1e-9)


@BOTH
def test_project_to_unit(g):
    unit, lnp = product.project_to_unit(g, [E, 0.0, 0.0])
    np.testing.assert_allclose(unit, [1, 0, 0])
    assert math.isclose(float(lnp), 1.0)
    u = product.unit_surface_point(g, 0.7, 0.2)
    assert abs(float(product.project_to_unit(g, u)[1])) < 1e-15
    p = 1.7 * u
    assert math.isclose(float(product.tangent_functional(g, p)[0]), float(product.project_to_unit(g, p)[1]))


@pytest.mark.parametrize("g, data", [(S2, FIG9), (H2, FIG10)], ids=["fig9", "fig10"])
def test_triangle_vertices_and_fibre_points(g, data, rng):
    tri = product.triangle_surface(g, *data)
    verts = np.array([[1.0, 0, 0], *data])
    np.testing.assert_allclose(tri.residual(verts), 0, atol=1e-12)
    units, _ = product.project_to_unit(g, verts[1:])
    for u, p in zip(units, verts[1:]):
        lnp = product.fibre_solve(g, *data, u + 1e-9 * rng.normal(size=3))
        assert abs(float(lnp) - math.log(math.sqrt(abs(float(product.norm2(g, p)))))) < 1e-6
    pts = product._sample_surface(tri, 300, rng)
    assert len(pts) > 100
    scale = np.abs(product.projected_triangle(g, product.project_to_unit(g, pts)[0], *data).weights()).sum(0)
    assert np.max(np.abs(tri.residual(pts)) / np.maximum(scale, 1.0)) <= 1e-9


@pytest.mark.parametrize("g, data", [(S2, FIG9), (H2, FIG10)], ids=["fig9", "fig10"])
def test_nontransitivity(g, data):
    assert product.nontransitivity_demo(g, *data) > 1e-6


@BOTH
def test_degenerate_triangle(g):
    with pytest.raises(DegenerateTriangleError):
        product.nontransitivity_demo(g, FIG9[0] if g is S2 else FIG10[0], (1.0, 0.0, 0.0))
    p = product.curve_point(g, 0.3, 0.2, 1.0)
    with pytest.raises(DegenerateTriangleError):
        product.triangle_surface(g, p, product.curve_point(g, 0.3, 0.2, 0.5))
