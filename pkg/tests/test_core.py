import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thurston import nil, sol
from thurston.core import (
    Box,
    Collineation,
    ContractViolation,
    GeometryError,
    GeometryId,
    OrbitList,
    SingularMapError,
    TriangleMesh,
    apply,
    compose,
    dv_membership,
    exprel,
    is_valid,
    z_over_expm1,
)

coords = st.floats(-5, 5, allow_nan=False)
points = st.tuples(coords, coords, coords).map(np.array)


def test_identity_apply():
    assert np.array_equal(apply(Collineation.identity(), [2.0, 3.0, 4.0]), [2.0, 3.0, 4.0])


def test_nil_translation_moves_origin():
    np.testing.assert_allclose(apply(nil.translation([1, 1, 1]), np.zeros(3)), [1, 1, 1])


def test_sol_translation_by_hand():
    out = apply(sol.translation([1, 1, 1]), [1.0, 1.0, 0.0])
    np.testing.assert_allclose(out, [1 + math.exp(-1), 1 + math.e, 1], rtol=0, atol=1e-15)


def test_compose_identity_and_inverse(rng):
    c = Collineation(rng.normal(size=(4, 4)) + 4 * np.eye(4))
    np.testing.assert_allclose(compose(Collineation.identity(), c).m, c.m)
    np.testing.assert_allclose(compose(c, c.inverse()).m, np.eye(4), atol=1e-12)


@given(st.tuples(coords, coords, coords), st.tuples(coords, coords, coords))
def test_nil_translation_composition(abc, xyz):
    a, b, c = abc
    x, y, z = xyz
    both = compose(nil.translation(abc), nil.translation(xyz))
    np.testing.assert_allclose(both.m, nil.translation([x + a, y + b, z + b * x + c]).m, atol=1e-12)


def test_associativity(rng):
    a, b, c = (Collineation(rng.normal(size=(4, 4))) for _ in range(3))
    np.testing.assert_allclose(compose(compose(a, b), c).m, compose(a, compose(b, c)).m, atol=1e-12)


@settings(max_examples=50)
@given(points)
def test_apply_inverse_round_trip(p):
    c = nil.translation([0.3, -1.2, 2.0]) @ sol.translation([1.0, 0.5, -0.7])
    np.testing.assert_allclose(apply(c.inverse(), apply(c, p)), p, atol=1e-12 * max(1.0, np.abs(p).max()) * 10)


def test_singular_map():
    m = np.eye(4)
    m[:, 0] = [0, 0, 0, 0]
    m[0, 0] = 0
    with pytest.raises(SingularMapError):
        apply(Collineation(m), [1.0, 2.0, 3.0])


def test_row_major_round_trip():
    values = list(range(16))
    assert Collineation.from_row_major(values).to_row_major() == values
    with pytest.raises(GeometryError):
        Collineation.from_row_major(values[:15])


def test_validity_predicates():
    assert is_valid(GeometryId.H2XR, [2.0, 1.0, 1.0])
    assert not is_valid(GeometryId.H2XR, [1.0, 1.0, 1.0])
    assert not is_valid(GeometryId.H2XR, [-2.0, 0.0, 0.0])
    assert not is_valid(GeometryId.S2XR, [0.0, 0.0, 0.0])
    assert is_valid(GeometryId.NIL, [100.0, -3.0, 1e6])
    assert not is_valid(GeometryId.SLR, [0.0, 1.0, 0.5])


def test_geometry_parse():
    assert GeometryId.parse("SOL") is GeometryId.SOL
    with pytest.raises(GeometryError):
        GeometryId.parse("euclid")


def test_box_parse():
    box = Box.parse("-1,1,-2,2,0,3")
    assert box.contains([0, 0, 1]) and not box.contains([0, 0, 4])
    with pytest.raises(GeometryError):
        Box.parse("1,2,3")
    with pytest.raises(GeometryError):
        Box(1, 0, 0, 1, 0, 1)


def test_dv_membership_sol_base_plane():
    orbit = OrbitList(np.zeros(3), (np.zeros(3), np.array([2.0, 0.0, 0.0])))
    assert dv_membership(np.zeros(3), orbit, GeometryId.SOL)
    assert dv_membership(np.array([0.5, 0.0, 0.0]), orbit, GeometryId.SOL)
    assert not dv_membership(np.array([1.5, 0.0, 0.0]), orbit, GeometryId.SOL)


def test_dv_membership_monotone(rng):
    images = tuple(rng.uniform(-2, 2, (5, 3)))
    for q in rng.uniform(-2, 2, (40, 3)):
        full = dv_membership(q, OrbitList(np.zeros(3), images), GeometryId.NIL)
        fewer = dv_membership(q, OrbitList(np.zeros(3), images[:2]), GeometryId.NIL)
        assert fewer or not full


def test_orbit_list_needs_images():
    with pytest.raises(ContractViolation):
        OrbitList(np.zeros(3), ())


def test_triangle_mesh_contract():
    with pytest.raises(ContractViolation):
        TriangleMesh(np.zeros((3, 3)), [[0, 1, 3]], np.zeros(3))
    with pytest.raises(ContractViolation):
        TriangleMesh(np.zeros((3, 3)), [[0, 1, 2]], np.zeros(2))
    assert TriangleMesh.empty().is_empty


@given(st.floats(-30, 30))
def test_exprel_matches_definition(z):
    if abs(z) > 1e-3:
        assert math.isclose(float(exprel(z)), math.expm1(z) / z, rel_tol=1e-13)
    assert math.isclose(float(z_over_expm1(z)) * float(exprel(z)), 1.0, rel_tol=1e-15)


def test_exprel_is_continuous_at_zero():
    assert float(exprel(0.0)) == 1.0
    assert abs(float(exprel(1e-5 * (1 - 1e-12))) - float(exprel(1e-5 * (1 + 1e-12)))) < 1e-15
