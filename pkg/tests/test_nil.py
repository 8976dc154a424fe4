import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from thurston import nil
from thurston.core import ApolloniusSpec, DegenerateTriangleError, ZeroLengthError, apply

coords = st.floats(-3, 3, allow_nan=False)


def test_curve_examples():
    np.testing.assert_allclose(nil.curve_point(0.0, 0.0, 1.0), [1, 0, 0])
    np.testing.assert_allclose(nil.curve_point(1.234, math.pi / 2, 2.5), [0, 0, 2.5], atol=1e-15)
    np.testing.assert_allclose(nil.curve_point(math.pi / 4, 0.0, math.sqrt(2)), [1, 1, 0.5])


def test_inverse_examples():
    p = nil.inverse([1.0, 0.0, 0.0])
    assert (p.phi, p.theta, p.r) == (0.0, 0.0, 1.0)
    p = nil.inverse([0.0, 0.0, 2.0])
    assert p.theta == math.pi / 2 and p.r == 2.0
    p = nil.inverse([0.0, -3.0, 0.0])
    assert p.phi == -math.pi / 2 and p.theta == 0.0 and p.r == 3.0
    with pytest.raises(ZeroLengthError):
        nil.inverse([0.0, 0.0, 0.0])


@pytest.mark.parametrize("p, case", [
    ((1.0, 2.0, 3.0), 1), ((-2.0, 0.0, 1.0), 2), ((-2.0, 0.0, 0.0), 3),
    ((0.0, 2.0, 0.0), 4), ((0.0, 0.0, -1.0), 5), ((0.0, -1.5, 0.7), 0),
])
def test_every_case_round_trips(p, case):
    params = nil.inverse(p)
    assert params.case == case
    np.testing.assert_allclose(nil.params_point(params), p, atol=1e-12)


@given(coords, coords, coords)
def test_round_trip(a, b, c):
    if a == b == c == 0:
        return
    np.testing.assert_allclose(nil.params_point(nil.inverse([a, b, c])), [a, b, c], atol=1e-9)


def test_distance_examples(rng):
    assert nil.distance(np.zeros(3), [1.0, 0.0, 0.0]) == 1.0
    p = rng.uniform(-3, 3, 3)
    assert nil.distance(p, p) == 0.0
    a, b, c = p
    assert math.isclose(nil.distance_from_origin(p), math.sqrt(a * a + b * b + (c - a * b / 2) ** 2))


def test_tangent_functional():
    np.testing.assert_array_equal(nil.tangent_functional(np.zeros(3)), np.zeros(3))
    np.testing.assert_array_equal(nil.tangent_functional([1.0, 0.0, 0.0]), [1, 0, 0])


def test_translation_inverse_formula(rng):
    a, b, c = p = rng.uniform(-2, 2, 3)
    x, y, z = q = rng.uniform(-2, 2, 3)
    expect = [x - a, y - b, a * (b - y) - c + z]
    np.testing.assert_allclose(apply(nil.translation_inverse(p), q), expect, atol=1e-12)
    np.testing.assert_allclose(nil.pullback(p, q), expect, atol=1e-12)
    np.testing.assert_allclose(apply(nil.translation_inverse(p), p), 0, atol=1e-12)
    np.testing.assert_allclose(nil.translation(np.zeros(3)).m, np.eye(4))


def test_subgroup_property(rng):
    for _ in range(20):
        phi, theta = rng.uniform(-3, 3), rng.uniform(-1.5, 1.5)
        t1, t2 = rng.uniform(0, 2, 2)
        left = nil.curve_point(phi, theta, t1 + t2)
        right = apply(nil.translation(nil.curve_point(phi, theta, t1)), nil.curve_point(phi, theta, t2))
        np.testing.assert_allclose(left, right, atol=1e-12)


def test_apollonius_examples(rng):
    p2 = np.array([-1.0, 1.0, 1.0])
    params = nil.inverse(p2)
    bisector = nil.apollonius_field(ApolloniusSpec(np.zeros(3), p2, 1.0))
    assert abs(float(bisector(nil.params_point(params, params.r / 2)))) < 1e-12
    ratio = nil.apollonius_field(ApolloniusSpec(np.zeros(3), p2, 2.0))
    assert abs(float(ratio(nil.params_point(params, params.r / 3)))) < 1e-12
    assert math.isclose(float(bisector(np.zeros(3))), -nil.distance(np.zeros(3), p2))
    # negative inside the sigma-ball along the segment
    ts = np.linspace(0.01, params.r / 3 - 0.01, 10)
    assert np.all(ratio(nil.params_point(params, ts)) < 0)


def test_apollonius_closed_form_matches(rng):
    p2 = rng.uniform(-2, 2, 3)
    pts = rng.uniform(-3, 3, (200, 3))
    field = nil.apollonius_field(ApolloniusSpec(np.zeros(3), p2, 1.7))
    np.testing.assert_allclose(nil.apollonius_closed_form(pts, p2, 1.7), field(pts), atol=1e-12)


def test_triangle_vertices_and_shape():
    tri = nil.triangle_surface([2.0, 1.0, 1.0], [-2.0, 2.0, 0.0])
    verts = np.array([[0, 0, 0], [2, 1, 1], [-2, 2, 0]], dtype=float)
    np.testing.assert_allclose(tri.residual(verts), 0, atol=1e-12)
    np.testing.assert_allclose(tri.triple(verts), 0, atol=1e-12)
    # z - xy/2 is affine: the surface is a hyperbolic paraboloid
    x, y = np.meshgrid(np.linspace(-2, 2, 5), np.linspace(-2, 2, 5))
    lin = tri.explicit(x, y) - x * y / 2
    assert np.allclose(lin, tri.kx * x + tri.ky * y)


def test_triangle_explicit_matches_triple(rng):
    tri = nil.triangle_surface([2.0, -3.0, -3.0], [3.0, 3.0, 3.0])
    xy = rng.uniform(-3, 3, (200, 2))
    pts = np.column_stack([xy, tri.explicit(xy[:, 0], xy[:, 1])])
    np.testing.assert_allclose(tri.triple(pts), 0, atol=1e-9)


def test_triangle_plane_case():
    tri = nil.triangle_surface([1.0, 2.0, 0.0], [2.0, 4.0, 5.0])
    assert tri.is_plane
    np.testing.assert_allclose(tri.residual([[1.0, 2.0, 9.0], [0.0, 0.0, -3.0]]), 0, atol=1e-15)


def test_triangle_degenerate():
    with pytest.raises(DegenerateTriangleError):
        nil.triangle_surface([1.0, 0.0, 0.0], [2.0, 0.0, 0.0])


def test_transitivity(rng):
    p2, p3 = np.array([2.0, 1.0, 1.0]), np.array([-2.0, 2.0, 0.0])
    tri = nil.triangle_surface(p2, p3)
    assert nil.triangle_transitivity_check(p2, p3, p3) == 0.0
    x, y = rng.uniform(-3, 3, 2)
    p4 = np.array([x, y, float(tri.explicit(x, y))])
    assert nil.triangle_transitivity_check(p2, p3, p4) <= 1e-9
