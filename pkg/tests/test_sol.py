import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from thurston import sol
from thurston.core import ApolloniusSpec, ContractViolation, DomainError, ZeroLengthError, apply

coords = st.floats(-3, 3, allow_nan=False)
FIG7 = (np.array([-1.0, 1.0, 1.0]), np.array([0.5, 1.0, 0.5]))


def test_curve_examples():
    np.testing.assert_allclose(sol.curve_point(0.7, math.pi / 2, 2.0), [0, 0, 2], atol=1e-15)
    np.testing.assert_allclose(sol.curve_point(0.0, 0.0, 5.0), [5, 0, 0])


def test_small_theta_limit():
    theta = 1e-6
    for phi in (0.3, 2.0, -1.1):
        for t in (0.5, 1.7, 3.0):
            w = math.sin(theta)
            printed = [math.cos(theta) * math.cos(phi) * (1 - math.exp(-w * t)) / w,
                       math.cos(theta) * math.sin(phi) * (math.exp(w * t) - 1) / w, w * t]
            np.testing.assert_allclose(sol.curve_point(phi, theta, t), printed, atol=1e-8)
            flat = sol.curve_point(phi, 1e-12, t)
            np.testing.assert_allclose(flat, [t * math.cos(phi), t * math.sin(phi), 0.0], atol=1e-8)


def test_inverse_examples():
    p = sol.inverse([3.0, 4.0, 0.0])
    assert p.t == 5.0 and p.theta == 0.0
    p = sol.inverse([0.0, 0.0, -2.0])
    assert p.theta == -math.pi / 2 and p.t == 2.0
    with pytest.raises(ZeroLengthError):
        sol.inverse(np.zeros(3))


@given(coords, coords, coords)
def test_round_trip(a, b, c):
    if a == b == c == 0:
        return
    np.testing.assert_allclose(sol.params_point(sol.inverse([a, b, c])), [a, b, c], atol=1e-9)


def test_distance_examples():
    assert sol.distance(np.zeros(3), [3.0, 4.0, 0.0]) == 5.0
    assert math.isclose(float(sol.distance(np.zeros(3), [0.0, 0.0, -1.5])), 1.5)


def test_tangent_functional_near_base_plane():
    np.testing.assert_array_equal(sol.tangent_functional(np.zeros(3)), np.zeros(3))
    a = sol.tangent_functional([1.2, -0.4, 1e-8])
    b = sol.tangent_functional([1.2, -0.4, 0.0])
    assert np.abs(a - b).max() < 1e-7


def test_translation_inverse(rng):
    p, q = rng.uniform(-2, 2, (2, 3))
    np.testing.assert_allclose(apply(sol.translation_inverse(p), q), sol.pullback(p, q), atol=1e-12)
    np.testing.assert_allclose(sol.pullback(p, p), 0, atol=1e-15)


def test_distance_is_symmetric(rng):
    p, q = rng.uniform(-2, 2, (2, 50, 3))
    np.testing.assert_allclose(sol.distance(p, q), sol.distance(q, p), rtol=1e-12)


def test_apollonius_midpoint_and_branches(rng):
    p2 = np.array([-1.0, 1.0, 0.5])
    params = sol.inverse(p2)
    field = sol.apollonius_field(ApolloniusSpec(np.zeros(3), p2, 1.0))
    assert abs(float(field(sol.params_point(params, params.t / 2)))) < 1e-12
    assert math.isclose(float(field(np.zeros(3))), -float(sol.distance(np.zeros(3), p2)))
    # the special planes z = 0 and z = c go through their own branches
    pts = np.column_stack([rng.uniform(-3, 3, (20, 2)), np.r_[np.zeros(10), np.full(10, 0.5)]])
    direct = sol.distance(np.zeros(3), pts) - sol.distance(pts, p2)
    np.testing.assert_allclose(sol.apollonius_branch_form(pts, p2, 1.0), direct, atol=1e-12)


def test_triangle_explicit_vs_triple(rng):
    tri = sol.triangle_surface(*FIG7)
    xy = rng.uniform(-3, 3, (4000, 2))
    ok = tri.in_domain(xy[:, 0], xy[:, 1])
    pts = np.column_stack([xy[ok], tri.explicit(xy[ok, 0], xy[ok, 1])])
    pts = pts[np.abs(pts[:, 2]) < 3]
    np.testing.assert_allclose(tri.bracket(pts), 0, atol=1e-9)
    np.testing.assert_allclose(tri.triple(pts), tri.prefactor(pts[:, 2]) * tri.bracket(pts), atol=1e-9)


def test_triangle_vertices_and_vertical_line():
    tri = sol.triangle_surface(*FIG7)
    verts = np.array([np.zeros(3), *FIG7])
    np.testing.assert_allclose(tri.residual(verts), 0, atol=1e-12)
    zs = np.linspace(-2, 2, 9)
    line = np.column_stack([np.full(9, tri.x_star), np.full(9, tri.y_star), zs])
    np.testing.assert_allclose(tri.residual(line), 0, atol=1e-12)


def test_explicit_outside_domain():
    tri = sol.triangle_surface(*FIG7)
    x, y = tri.x_star + 1.0, tri.y_star - 1.0
    if tri.in_domain(x, y):
        x, y = tri.x_star + 1.0, tri.y_star + 1.0
    assert not tri.in_domain(x, y)
    with pytest.raises(DomainError):
        tri.explicit(x, y)
    assert np.isnan(tri.explicit_masked(x, y))


def test_level_lines_are_straight(rng):
    tri = sol.triangle_surface(*FIG7)
    for z in rng.uniform(-2, 2, 10):
        A, B, C = tri.level_line(z)
        xs = rng.uniform(-3, 3, 3)
        ys = -(A * xs + C) / B
        pts = np.column_stack([xs, ys, np.full(3, z)])
        np.testing.assert_allclose(tri.residual(pts), 0, atol=1e-9)


def test_transitivity_examples():
    p2, p3 = FIG7
    tri = sol.triangle_surface(p2, p3)
    assert sol.triangle_transitivity_check(p2, p3, p3) <= 1e-12
    assert tri.in_domain(0.3, 0.7)
    p4 = np.array([0.3, 0.7, float(tri.explicit(0.3, 0.7))])
    assert sol.triangle_transitivity_check(p2, p3, p4) <= 1e-9
    off = p4 + [0.0, 0.0, 1e-3]
    with pytest.raises(ContractViolation):
        sol.triangle_transitivity_check(p2, p3, off)
    assert sol.triangle_transitivity_check(p2, p3, off, strict=False) > 1e-6
