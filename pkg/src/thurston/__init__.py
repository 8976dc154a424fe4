"""Translation curves, translation distances and the surfaces built from them in the
projective models of Nil, Sol, SL2R, S2xR and H2xR."""

from .core import (
    ApolloniusSpec,
    Box,
    Collineation,
    GeometryError,
    GeometryId,
    OrbitList,
    ScalarField,
    TriangleMesh,
    apply,
    compose,
    dv_membership,
)
from .geometries import distance, forward, inverse

__version__ = "0.1.0"

__all__ = [
    "ApolloniusSpec",
    "Box",
    "Collineation",
    "GeometryError",
    "GeometryId",
    "OrbitList",
    "ScalarField",
    "TriangleMesh",
    "apply",
    "compose",
    "distance",
    "dv_membership",
    "forward",
    "inverse",
]
