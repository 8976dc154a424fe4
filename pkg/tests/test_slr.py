import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from thurston import slr
from thurston.core import ApolloniusSpec, DegenerateTriangleError, OutOfChartError, apply


def test_curve_examples():
    np.testing.assert_allclose(slr.curve_point(0.3, math.pi / 2, 0.9), [math.tan(0.9), 0, 0], atol=1e-15)
    np.testing.assert_allclose(slr.curve_point(0.0, 0.0, 1.3), [0, math.tanh(1.3), 0], atol=1e-15)
    np.testing.assert_allclose(slr.curve_point(math.pi / 2, math.pi / 4, math.sqrt(2)), [1, 0, 1], atol=1e-15)


def test_curve_leaves_chart():
    with pytest.raises(OutOfChartError):
        slr.curve_point(0.0, math.pi / 2, 2.0)
    assert np.all(np.isnan(slr.curve_point(0.0, math.pi / 2, 2.0, strict=False)))


def test_inverse_examples():
    p = slr.inverse([0.7, 0.0, 0.0])
    assert p.alpha == math.pi / 2 and p.s == math.atan(0.7)
    p = slr.inverse([0.0, math.tanh(1.0), 0.0])
    assert p.alpha == 0.0 and p.lam == 0.0 and math.isclose(p.s, 1.0, rel_tol=1e-14)
    assert p.kind is slr.CurveClass.H2_LIKE
    p = slr.inverse([1.0, 0.0, 1.0])
    assert p.kind is slr.CurveClass.LIGHT_LIKE and math.isclose(p.s, math.sqrt(2))
    with pytest.raises(OutOfChartError):
        slr.inverse([0.0, 1.0, 0.5])


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
def test_round_trip(a, b, c):
    if b * b + c * c - a * a >= 0.95 or (a == b == c == 0):
        return
    np.testing.assert_allclose(slr.params_point(slr.inverse([a, b, c])), [a, b, c], atol=1e-9)


@pytest.mark.parametrize("alpha, kind", [
    (0.3, slr.CurveClass.H2_LIKE), (-math.pi / 4, slr.CurveClass.LIGHT_LIKE), (1.2, slr.CurveClass.FIBRE_LIKE),
])
def test_classes(alpha, kind, rng):
    assert slr.classify(alpha) is kind
    for lam in rng.uniform(-3, 3, 5):
        p = slr.curve_point(lam, alpha, 0.8)
        back = slr.inverse(p)
        assert back.kind is kind
        assert math.isclose(back.s, 0.8, rel_tol=1e-12)


def test_distance_examples(rng):
    assert math.isclose(float(slr.distance(np.zeros(3), [1.0, 0.0, 0.0])), math.pi / 4)
    p = np.array([0.2, 0.3, -0.1])
    assert float(slr.distance(p, p)) == 0.0


def test_translation_is_homomorphism(rng):
    for _ in range(10):
        x, y = rng.uniform(-0.5, 0.5, (2, 3))
        xy = apply(slr.translation(y), x)
        m = (slr.translation(x) @ slr.translation(y)).m
        np.testing.assert_allclose(m / m[0, 0], slr.translation(xy).m, atol=1e-12)


def test_translation_inverse(rng):
    p = np.array([0.4, -0.3, 0.2])
    np.testing.assert_allclose(apply(slr.translation_inverse(p), p), 0, atol=1e-14)
    q = rng.uniform(-0.5, 0.5, 3)
    np.testing.assert_allclose(apply(slr.translation_inverse(p), q), slr.pullback(p, q), atol=1e-12)


def test_curve_is_translation_curve(rng):
    # C(s + h) is C(h) translated by C(s): the tangent is transported by T
    for _ in range(10):
        lam, alpha = rng.uniform(-3, 3), rng.uniform(-0.7, 0.7)
        s, h = 0.6, 1e-6
        c = slr.curve_homogeneous(lam, alpha, s)
        num = (slr.curve_homogeneous(lam, alpha, s + h) - slr.curve_homogeneous(lam, alpha, s - h)) / (2 * h)
        d0 = np.concatenate([[0.0], slr._direction(lam, alpha)])
        np.testing.assert_allclose(num, d0 @ slr._t_matrix(c), atol=1e-6)


def test_apollonius_midpoint():
    p2 = np.array([0.25, 0.6, 0.0])
    params = slr.inverse(p2)
    field = slr.apollonius_field(ApolloniusSpec(np.zeros(3), p2, 1.0))
    assert abs(float(field(slr.params_point(params, params.s / 2)))) < 1e-12


def test_triangle_plane():
    p2, p3 = np.array([0.3, 0.5, 0.2]), np.array([-0.4, 0.2, 0.6])
    tri = slr.triangle_surface(p2, p3)
    np.testing.assert_allclose(tri.residual(np.array([np.zeros(3), p2, p3, 0.37 * p2])), 0, atol=1e-15)
    n = np.cross(p2, p3)
    np.testing.assert_allclose(tri.normal, n / np.linalg.norm(n))
    with pytest.raises(DegenerateTriangleError):
        slr.triangle_surface(p2, 2 * p2)
