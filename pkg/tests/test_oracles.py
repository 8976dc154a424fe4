import math

import numpy as np
import pytest

from thurston import oracles, slr
from thurston.core import ContractViolation, GeometryId


def test_nil_straight_line():
    end = oracles.integrate_translation_curve(oracles.OdeSpec("nil", [1.0, 0.0, 0.0]))
    np.testing.assert_allclose(end, [1, 0, 0], atol=1e-10)


def test_sol_fibre():
    end = oracles.integrate_translation_curve(oracles.OdeSpec("sol", [0.0, 0.0, 1.0], length=2.5))
    np.testing.assert_allclose(end, [0, 0, 2.5], atol=1e-12)


@pytest.mark.parametrize("alpha", [0.3, math.pi / 4, 1.1])
def test_slr_matches_closed_form(alpha):
    lam = 0.7
    t = [math.sin(alpha), math.cos(alpha) * math.cos(lam), math.cos(alpha) * math.sin(lam)]
    end = oracles.integrate_translation_curve(oracles.OdeSpec("slr", t, step=1e-3, length=0.6))
    np.testing.assert_allclose(end, slr.curve_point(lam, alpha, 0.6), atol=1e-6)


def test_samples_include_endpoints():
    poly = oracles.integrate_translation_curve(oracles.OdeSpec("nil", [0.0, 1.0, 0.0], step=1e-3), samples=10)
    assert poly.shape == (11, 3)
    np.testing.assert_allclose(poly[0], 0)
    np.testing.assert_allclose(poly[-1], [0, 1, 0], atol=1e-12)


def test_ode_spec_validation():
    with pytest.raises(ContractViolation):
        oracles.OdeSpec("nil", [1.0, 0.0, 0.0], step=1e-2)
    with pytest.raises(ContractViolation):
        oracles.OdeSpec("nil", [1.0, 1.0, 0.0])
    with pytest.raises(ContractViolation):
        oracles.OdeSpec("nil", [1.0, 0.0, 0.0], length=0.0)


def test_refuses_too_many_steps():
    spec = oracles.OdeSpec("nil", [1.0, 0.0, 0.0], step=1e-6, length=20.0)
    assert spec.steps > oracles.MAX_STEPS
    with pytest.raises(ContractViolation):
        oracles.integrate_translation_curve(spec)


@pytest.mark.parametrize("g, p, d", [
    ("nil", [1.0, 0.0, 0.0], 1.0),
    ("sol", [3.0, 4.0, 0.0], 5.0),
    ("slr", [1.0, 0.0, 0.0], math.pi / 4),
])
def test_shooting_examples(g, p, d):
    assert abs(oracles.oracle_distance(g, p) - d) <= 1e-5


def test_shooting_unreachable():
    # outside the SL2R model no curve from the origin ends there
    with pytest.raises(oracles.UnreachableError):
        oracles.shoot(GeometryId.SLR, [0.0, 2.0, 0.0], iterations=3)
